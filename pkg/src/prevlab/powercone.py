"""Finitely generated convex Smyth and Hoare elements over previsions.

A SmythGen stands for the up-closed convex hull of its generators, a
HoareGen for the closed down-closed convex hull.  The closures are never
materialized; everything downstream factors through the min (Smyth) or
max (Hoare) of the generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from .exactgeo import DimensionError
from .exactgeo.rational import RatLike, rat
from .prevcore import Prevision, combine, equal, zero_prevision


def _check(gens: Tuple[Prevision, ...]) -> None:
    if not gens:
        raise ValueError("hyperspace elements need at least one generator")
    if any(not isinstance(g, Prevision) for g in gens):
        raise TypeError("generators must be previsions")
    if len({g.n for g in gens}) != 1:
        raise DimensionError("generators of mixed dimension")


@dataclass(frozen=True)
class SmythGen:
    gens: Tuple[Prevision, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        _check(self.gens)

    @property
    def n(self) -> int:
        return self.gens[0].n


@dataclass(frozen=True)
class HoareGen:
    gens: Tuple[Prevision, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        _check(self.gens)

    @property
    def n(self) -> int:
        return self.gens[0].n


Hyper = Union[SmythGen, HoareGen]


class FlavorMismatch(TypeError):
    pass


def _same_flavor(args: Sequence[Hyper]) -> type:
    if not args:
        raise ValueError("cone_op needs arguments")
    t = type(args[0])
    if any(type(x) is not t for x in args):
        raise FlavorMismatch("cannot mix Smyth and Hoare elements")
    if len({x.n for x in args}) != 1:
        raise DimensionError("elements of mixed dimension")
    return t


def cone_op(kind: str, args: Sequence[Hyper], a: RatLike = None) -> Hyper:
    """add / scale(a) / mix(a) / smyth_inf / hoare_sup on generator lists."""
    args = list(args)
    t = _same_flavor(args)
    if kind == "add":
        gens = args[0].gens
        for x in args[1:]:
            gens = tuple(combine("add", [g, h]) for g in gens for h in x.gens)
        return t(gens)
    if kind == "scale":
        if len(args) != 1 or a is None:
            raise ValueError("scale takes one element and a factor")
        c = rat(a)
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        if c == 0:
            return t((zero_prevision(args[0].n),))
        return t(tuple(combine("scale", [g], c) for g in args[0].gens))
    if kind == "mix":
        if len(args) != 2 or a is None:
            raise ValueError("mix takes two elements and a weight")
        c = rat(a)
        if not 0 <= c <= 1:
            raise ValueError("mix weight must lie in [0, 1]")
        return t(tuple(combine("mix", [g, h], c) for g in args[0].gens for h in args[1].gens))
    if kind == "smyth_inf":
        if t is not SmythGen:
            raise FlavorMismatch("smyth_inf needs Smyth elements")
        return SmythGen(tuple(dict.fromkeys(g for x in args for g in x.gens)))
    if kind == "hoare_sup":
        if t is not HoareGen:
            raise FlavorMismatch("hoare_sup needs Hoare elements")
        return HoareGen(tuple(dict.fromkeys(g for x in args for g in x.gens)))
    raise ValueError(f"unknown cone operation {kind!r}")


def envelope(x: Hyper) -> Prevision:
    """Pointwise min (Smyth) or max (Hoare) of the generators."""
    return combine("inf" if isinstance(x, SmythGen) else "sup", list(x.gens))


def canonicalize(x: Hyper) -> Hyper:
    """Drop every generator whose removal leaves the envelope unchanged."""
    t = type(x)
    target = envelope(x)
    gens = list(dict.fromkeys(x.gens))
    i = 0
    while i < len(gens) and len(gens) > 1:
        trial = gens[:i] + gens[i + 1 :]
        if equal(envelope(t(tuple(trial))), target):
            gens = trial
        else:
            i += 1
    return t(tuple(gens))

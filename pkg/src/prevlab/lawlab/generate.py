"""Deterministic random previsions and points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from ..exactgeo import Point
from ..prevcore import Prevision, max_of_super, min_of_sub
from ..transforms import Flavor, as_flavor, flavor_holds


class FlavorUnsatisfiable(RuntimeError):
    pass


@dataclass(frozen=True)
class GenParams:
    n: int = 2
    max_branches: int = 3
    max_gens: int = 3
    max_denominator: int = 8
    flavor: Flavor = Flavor.PLAIN
    form: str = "any"  # "any", "min_of_sub" or "max_of_super"


def _composition(rng: random.Random, total: int, parts: int) -> List[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    edges = [0] + cuts + [total]
    return [b - a for a, b in zip(edges, edges[1:])]


def random_weight(rng: random.Random, n: int, max_den: int, flavor: Flavor) -> Point:
    """A nonzero weight vector; its mass is <= 1 (subnorm) or = 1 (norm)."""
    while True:
        d = rng.randint(1, max_den)
        if flavor is Flavor.PLAIN:
            ks = [rng.randint(0, 2 * d) for _ in range(n)]
        elif flavor is Flavor.SUBNORM:
            ks = _composition(rng, rng.randint(1, d), n)
        else:
            ks = _composition(rng, d, n)
        if any(ks):
            return tuple(Fraction(k, d) for k in ks)


def random_prevision(seed: int, params: GenParams = GenParams(), retries: int = 200) -> Prevision:
    """Deterministic in (seed, params); rejection-samples until the flavor holds."""
    flavor = as_flavor(params.flavor)
    if params.n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    for _ in range(retries):
        form = params.form if params.form != "any" else rng.choice(("min_of_sub", "max_of_super"))
        branches = [
            [random_weight(rng, params.n, params.max_denominator, flavor) for _ in range(rng.randint(1, params.max_gens))]
            for _ in range(rng.randint(1, params.max_branches))
        ]
        P = min_of_sub(branches) if form == "min_of_sub" else max_of_super(branches)
        if flavor_holds(P, flavor):
            return P
    raise FlavorUnsatisfiable(f"no {flavor.value} prevision after {retries} tries")


def random_point(rng: random.Random, n: int, max_den: int = 8, positive: bool = False) -> Point:
    lo = 1 if positive else 0
    d = rng.randint(1, max_den)
    return tuple(Fraction(rng.randint(lo, 2 * d), d) for _ in range(n))


def random_sublinear(rng: random.Random, n: int, flavor: Flavor = Flavor.PLAIN, max_gens: int = 3) -> Prevision:
    return min_of_sub([[random_weight(rng, n, 8, flavor) for _ in range(rng.randint(1, max_gens))]])


def random_superlinear(rng: random.Random, n: int, flavor: Flavor = Flavor.PLAIN, max_gens: int = 3) -> Prevision:
    return max_of_super([[random_weight(rng, n, 8, flavor) for _ in range(rng.randint(1, max_gens))]])

"""Rational scalars and nonnegative points."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rat = Fraction
Point = Tuple[Fraction, ...]
RatLike = Union[Fraction, int, str]

INF = float("inf")


class DimensionError(ValueError):
    """Raised when vectors or expressions of different dimensions meet."""


def rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction.

    Floats are rejected on purpose: nothing in the library is allowed to
    pass through binary floating point.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec(xs: Iterable[RatLike]) -> Point:
    return tuple(rat(x) for x in xs)


def point(xs: Iterable[RatLike]) -> Point:
    """A nonnegative vector of rationals."""
    p = vec(xs)
    if not p:
        raise DimensionError("points need at least one coordinate")
    if any(c < 0 for c in p):
        raise ValueError(f"point has a negative coordinate: {fmt_point(p)}")
    return p


def ones(n: int) -> Point:
    return (Fraction(1),) * n


def zeros(n: int) -> Point:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Point:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Sequence[Fraction]) -> Point:
    return tuple(c * x for x in a)


def mass(a: Sequence[Fraction]) -> Fraction:
    return sum(a, Fraction(0))


def fmt_rat(x) -> str:
    if x == INF:
        return "inf"
    return str(Fraction(x))


def fmt_point(p: Sequence[Fraction]) -> str:
    return "(" + ",".join(fmt_rat(c) for c in p) + ")"


def parse_point(text: str) -> Point:
    """Parse a comma separated list such as "1,1/2,0"."""
    parts = [s for s in text.replace(" ", "").split(",")]
    if not parts or any(not s for s in parts):
        raise ValueError(f"malformed point {text!r}")
    return point(parts)

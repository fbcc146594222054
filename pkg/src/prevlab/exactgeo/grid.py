"""Finite rational grids on the simplex."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List

from .rational import Point


def delta_grid(n: int, N: int) -> List[Point]:
    """Vectors b with coordinates in (1/N)N and 1 - n/N < sum(b) <= 1.

    Returned in lexicographic order.  N == n is accepted (the lower bound
    is then 0, which is still meaningful); N < n is rejected.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if N < n:
        raise ValueError(f"delta_grid needs N >= n, got n={n}, N={N}")
    out = []
    for ks in product(range(N + 1), repeat=n):
        s = sum(ks)
        if N - n < s <= N:
            out.append(tuple(Fraction(k, N) for k in ks))
    return out


def simplex_grid(m: int, denominator: int) -> List[Point]:
    """All points of the standard simplex with coordinates in (1/denominator)N."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(Fraction(k, denominator) for k in prefix + [left]))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], denominator, m)
    return out

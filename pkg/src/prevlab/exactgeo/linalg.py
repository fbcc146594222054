"""Small exact linear systems."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


def solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Tuple[Fraction, ...]]:
    """Solve A x = b for square A by Gauss-Jordan; None when A is singular."""
    n = len(rows)
    m: List[List[Fraction]] = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        if p != 1:
            m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))

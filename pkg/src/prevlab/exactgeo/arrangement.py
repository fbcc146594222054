"""Exact sign certification of PHPL expressions on the nonnegative orthant.

By positive homogeneity it suffices to look at the standard simplex.  The
kink forms of the expression cut the simplex into cells on which it is
linear; a linear function on a polytope attains its extremes at vertices,
so the sign of the expression is decided by its values at the vertices of
the arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .grid import simplex_grid
from .linalg import solve_square
from .phpl import Expr, Form, evaluate, kink_forms
from .rational import DimensionError, Point

EXACT_MAX_DIM = 3
DEFAULT_GRID_DENOMINATOR = 24

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class ExactModeBoundError(DimensionError):
    """The ambient dimension is beyond what the exact engine certifies."""


@dataclass(frozen=True)
class Nonneg:
    certified: bool = True  # False means "grid-certified" only


@dataclass(frozen=True)
class Negative:
    witness: Point
    value: Fraction


Verdict = Union[Nonneg, Negative]


@dataclass(frozen=True)
class Cell:
    sample: Point  # a point interior to the cell (relative to the simplex)
    vertices: Tuple[Point, ...]


def _check_exact(m: int) -> None:
    if m > EXACT_MAX_DIM:
        raise ExactModeBoundError(
            f"exact certification supports dimension <= {EXACT_MAX_DIM}, got {m}; use grid mode"
        )


# -- dimension 2: the segment t -> (1-t, t) ---------------------------------


def _breakpoints(forms: Sequence[Form]) -> List[Fraction]:
    ts = {ZERO, ONE}
    for k0, k1 in forms:
        if k0 != k1:
            t = k0 / (k0 - k1)
            if 0 < t < 1:
                ts.add(t)
    return sorted(ts)


def _seg(t: Fraction) -> Point:
    return (ONE - t, t)


# -- dimension 3: triangle in (u, v) = (x1, x2), x0 = 1 - u - v -----------------


def _uv_line(k: Form) -> Tuple[Fraction, Fraction, Fraction]:
    # k0 (1 - u - v) + k1 u + k2 v = a u + b v + c
    k0, k1, k2 = k
    return (k1 - k0, k2 - k0, k0)


_TRIANGLE_SIDES = ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))


def _triangle_vertices(forms: Sequence[Form]) -> List[Point]:
    lines = list(dict.fromkeys(_uv_line(k) for k in list(forms) + list(_TRIANGLE_SIDES)))
    pts: Dict[Point, None] = {}
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        u = (b1 * c2 - b2 * c1) / det
        v = (a2 * c1 - a1 * c2) / det
        if u >= 0 and v >= 0 and u + v <= 1:
            pts[(ONE - u - v, u, v)] = None
    return sorted(pts)


def _triangle_cells(forms: Sequence[Form]) -> List[Cell]:
    verts = _triangle_vertices(forms)
    us = sorted({p[1] for p in verts})
    lines = [
        (a, b, c)
        for (a, b, c) in dict.fromkeys(_uv_line(k) for k in list(forms) + list(_TRIANGLE_SIDES))
        if b != 0
    ]

    def v_at(line, u):
        a, b, c = line
        return -(a * u + c) / b

    def to_x(u, v):
        return (ONE - u - v, u, v)

    cells = []
    for ua, ub in zip(us, us[1:]):
        um = (ua + ub) / 2
        inside = {}
        for ln in lines:
            v = v_at(ln, um)
            if 0 <= v <= 1 - um and v not in inside:
                inside[v] = ln
        order = sorted(inside)
        for v1, v2 in zip(order, order[1:]):
            l1, l2 = inside[v1], inside[v2]
            corners = dict.fromkeys(
                [to_x(ua, v_at(l1, ua)), to_x(ub, v_at(l1, ub)), to_x(ua, v_at(l2, ua)), to_x(ub, v_at(l2, ub))]
            )
            cells.append(Cell(to_x(um, (v1 + v2) / 2), tuple(corners)))
    return cells


# -- general dimension (vertex enumeration only) -------------------------------


def _general_vertices(forms: Sequence[Form], m: int) -> List[Point]:
    planes = list(dict.fromkeys(list(forms) + [tuple(ONE if i == k else ZERO for i in range(m)) for k in range(m)]))
    pts: Dict[Point, None] = {}
    ones = tuple(ONE for _ in range(m))
    rhs = [ZERO] * (m - 1) + [ONE]
    for combo in combinations(planes, m - 1):
        x = solve_square(list(combo) + [ones], rhs)
        if x is not None and all(c >= 0 for c in x):
            pts[x] = None
    return sorted(pts)


def simplex_vertices(forms: Sequence[Form], m: int) -> List[Point]:
    """Vertices of the arrangement cut by `forms` on the standard simplex."""
    if m == 1:
        return [(ONE,)]
    if m == 2:
        return [_seg(t) for t in _breakpoints(forms)]
    if m == 3:
        return _triangle_vertices(forms)
    return _general_vertices(forms, m)


def simplex_cells(forms: Sequence[Form], m: int) -> List[Cell]:
    """Full-dimensional cells of the arrangement, each with an interior sample
    point and its vertices."""
    _check_exact(m)
    if m == 1:
        return [Cell((ONE,), ((ONE,),))]
    if m == 2:
        ts = _breakpoints(forms)
        return [Cell(_seg((a + b) / 2), (_seg(a), _seg(b))) for a, b in zip(ts, ts[1:])]
    return _triangle_cells(forms)


def expression_vertices(f: Expr) -> List[Point]:
    m = f.dim
    _check_exact(m)
    return simplex_vertices(kink_forms(f), m)


def expression_cells(f: Expr) -> List[Cell]:
    return simplex_cells(kink_forms(f), f.dim)


def verify_nonneg_ph_pl(
    f: Expr, *, mode: str = "exact", grid_denominator: int = DEFAULT_GRID_DENOMINATOR
) -> Verdict:
    """Decide whether f >= 0 on the whole nonnegative orthant.

    mode="exact" certifies for dimension <= 3.  mode="grid" samples the
    simplex at the given denominator: a Negative is still an exact witness,
    but Nonneg comes back with certified=False.
    """
    m = f.dim
    if mode == "exact":
        pts = expression_vertices(f)
    elif mode == "grid":
        pts = simplex_grid(m, grid_denominator)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    worst: Optional[Tuple[Fraction, Point]] = None
    for p in pts:
        v = evaluate(f, p)
        if v < 0 and (worst is None or (v, p) < worst):
            worst = (v, p)
    if worst is not None:
        return Negative(worst[1], worst[0])
    return Nonneg(certified=(mode == "exact"))


def simplex_extremum(f: Expr, sense: str) -> Tuple[Fraction, Point]:
    """Exact max or min of f over the standard simplex with a lexicographically
    smallest optimal vertex."""
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    best = None
    for p in expression_vertices(f):
        v = evaluate(f, p)
        key = (-v if sense == "max" else v, p)
        if best is None or key < best[0]:
            best = (key, v, p)
    return best[1], best[2]

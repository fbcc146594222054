"""Previsions on a finite space {0..n-1}, in normal form.

A prevision here is a monotone, positively homogeneous, continuous
piecewise-linear functional on the nonnegative orthant.  Four normal forms:

* Linear(LinearPrev)  h -> <w, h>
* MinOfSub            h -> min over branches of max over gens <g, h>
* MaxOfSuper          h -> max over branches of min over gens <g, h>
* GaugeForm           Minkowski gauge of a finitely generated convex set
                      (down: sublinear, may be infinite; up: superlinear)

Every pointwise question (order, sub/superlinearity, normalization) is
reduced to the exact sign certification of a PHPL expression.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .exactgeo import (
    INF,
    Constraint,
    DimensionError,
    Expr,
    Infeasible,
    Lin,
    LinExpr,
    Negative,
    Optimal,
    Point,
    dot,
    emax,
    emin,
    evaluate,
    expression_cells,
    expression_vertices,
    local_form,
    lp_solve,
    point,
    restrict,
    substitute,
    verify_nonneg_ph_pl,
)
from .exactgeo.linalg import solve_square
from .exactgeo.rational import RatLike, fmt_point, mass, rat

ZERO = Fraction(0)
ONE = Fraction(1)


class PostconditionFailure(RuntimeError):
    """A construction produced a value that failed its own verification."""


class InfiniteGaugeError(ValueError):
    """A gauge with infinite values was used where a finite prevision is needed."""


# -- forms -------------------------------------------------------------------


def _points(gens: Iterable[Sequence[RatLike]]) -> Tuple[Point, ...]:
    pts = tuple(point(g) for g in gens)
    if not pts:
        raise ValueError("generator lists must be nonempty")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionError("generators of mixed dimension")
    return pts


@dataclass(frozen=True)
class LinearPrev:
    weights: Point

    def __post_init__(self):
        object.__setattr__(self, "weights", point(self.weights))


@dataclass(frozen=True)
class DownGen:
    """Body of the sublinear prevision h -> max_g <g, h>."""

    gens: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", _points(self.gens))


@dataclass(frozen=True)
class UpGen:
    """Body of the superlinear prevision h -> min_g <g, h>."""

    gens: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", _points(self.gens))


@dataclass(frozen=True)
class MinOfSub:
    branches: Tuple[DownGen, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("MinOfSub needs at least one branch")


@dataclass(frozen=True)
class MaxOfSuper:
    branches: Tuple[UpGen, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("MaxOfSuper needs at least one branch")


@dataclass(frozen=True)
class GaugeForm:
    """Minkowski gauge of down-closure (direction "down") or up-closure
    ("up") of the convex hull of `hull_points`."""

    hull_points: Tuple[Point, ...]
    direction: str

    def __post_init__(self):
        object.__setattr__(self, "hull_points", _points(self.hull_points))
        if self.direction not in ("down", "up"):
            raise ValueError(f"gauge direction must be 'down' or 'up', not {self.direction!r}")
        if self.direction == "up" and any(not any(p) for p in self.hull_points):
            raise ValueError("an up-gauge hull point of zero makes the gauge infinite")


Form = Union[LinearPrev, MinOfSub, MaxOfSuper, GaugeForm]


def _form_dim(form: Form) -> int:
    if isinstance(form, LinearPrev):
        return len(form.weights)
    if isinstance(form, GaugeForm):
        return len(form.hull_points[0])
    dims = {len(g) for b in form.branches for g in b.gens}
    if len(dims) != 1:
        raise DimensionError("branches of mixed dimension")
    return dims.pop()


@dataclass(frozen=True)
class Prevision:
    n: int
    form: Form
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if _form_dim(self.form) != self.n:
            raise DimensionError(f"form has dimension {_form_dim(self.form)}, expected {self.n}")
        object.__setattr__(self, "_hash", hash((self.n, self.form)))

    def __hash__(self):
        return self._hash

    def __call__(self, h: Sequence[RatLike]):
        return eval_prevision(self, h)

    def __str__(self) -> str:
        return describe(self)


# -- constructors --------------------------------------------------------------


def linear(*weights: RatLike) -> Prevision:
    w = point(weights)
    return Prevision(len(w), LinearPrev(w))


def zero_prevision(n: int) -> Prevision:
    return Prevision(n, LinearPrev((ZERO,) * n))


def max_of(*gens: Sequence[RatLike]) -> Prevision:
    """h -> max_g <g, h>  (a sublinear prevision)"""
    b = DownGen(gens)
    return Prevision(len(b.gens[0]), MinOfSub((b,)))


def min_of(*gens: Sequence[RatLike]) -> Prevision:
    """h -> min_g <g, h>  (a superlinear prevision)"""
    b = UpGen(gens)
    return Prevision(len(b.gens[0]), MaxOfSuper((b,)))


def min_of_sub(branches: Sequence[Sequence[Sequence[RatLike]]]) -> Prevision:
    f = MinOfSub(tuple(DownGen(b) for b in branches))
    return Prevision(_form_dim(f), f)


def max_of_super(branches: Sequence[Sequence[Sequence[RatLike]]]) -> Prevision:
    f = MaxOfSuper(tuple(UpGen(b) for b in branches))
    return Prevision(_form_dim(f), f)


def gauge(hull_points: Sequence[Sequence[RatLike]], direction: str) -> Prevision:
    g = GaugeForm(hull_points, direction)
    return Prevision(len(g.hull_points[0]), g)


def describe(P: Prevision) -> str:
    f = P.form
    if isinstance(f, LinearPrev):
        return f"linear{fmt_point(f.weights)}"
    if isinstance(f, GaugeForm):
        return f"gauge[{f.direction}]({', '.join(fmt_point(p) for p in f.hull_points)})"
    inner, outer = ("max", "min") if isinstance(f, MinOfSub) else ("min", "max")
    parts = [f"{inner}({', '.join(fmt_point(g) for g in b.gens)})" for b in f.branches]
    return parts[0] if len(parts) == 1 else f"{outer}({', '.join(parts)})"


# -- evaluation ------------------------------------------------------------------


def _check_point(P: Prevision, h: Sequence[RatLike]) -> Point:
    x = point(h)
    if len(x) != P.n:
        raise DimensionError(f"prevision has dimension {P.n}, point has {len(x)}")
    return x


def _gauge_lp(G: GaugeForm, g: Point):
    k = len(G.hull_points)
    n = len(g)
    nonneg = [Constraint(LinExpr(tuple(ONE if j == i else ZERO for j in range(k))), ">=") for i in range(k)]
    rel = ">=" if G.direction == "down" else "<="
    rows = [
        Constraint(LinExpr(tuple(G.hull_points[j][i] for j in range(k)), -g[i]), rel) for i in range(n)
    ]
    obj = LinExpr((ONE,) * k)
    return lp_solve("min" if G.direction == "down" else "max", obj, rows + nonneg, lexicographic=False)


def eval_prevision(P: Prevision, h: Sequence[RatLike]):
    """Exact value of P at h; float('inf') only for down-gauges."""
    x = _check_point(P, h)
    f = P.form
    if isinstance(f, LinearPrev):
        return dot(f.weights, x)
    if isinstance(f, MinOfSub):
        return min(max(dot(g, x) for g in b.gens) for b in f.branches)
    if isinstance(f, MaxOfSuper):
        return max(min(dot(g, x) for g in b.gens) for b in f.branches)
    res = _gauge_lp(f, x)
    if isinstance(res, Optimal):
        return res.value
    if isinstance(res, Infeasible) and f.direction == "down":
        return INF
    raise AssertionError(f"unexpected gauge LP outcome {res!r}")


def choquet_eval(w: LinearPrev, h: Sequence[RatLike]) -> Fraction:
    """Integral of h against the valuation w through its level sets."""
    x = point(h)
    if len(x) != len(w.weights):
        raise DimensionError("dimension mismatch")
    order = sorted(range(len(x)), key=lambda i: x[i], reverse=True)
    total = ZERO
    level_mass = ZERO
    for pos, i in enumerate(order):
        level_mass += w.weights[i]
        nxt = x[order[pos + 1]] if pos + 1 < len(order) else ZERO
        total += (x[i] - nxt) * level_mass
    return total


# -- gauges in vertex form -------------------------------------------------------


@lru_cache(maxsize=4096)
def gauge_vertex_form(G: GaugeForm) -> Tuple[Tuple[Point, ...], FrozenSet[int]]:
    """Dual description of a gauge.

    Returns (vertices, infinite_coords).  For a down-gauge the finite part
    is max over vertices y of <y, g> on the face where g vanishes on
    infinite_coords (and +inf off that face); for an up-gauge it is the min
    over vertices, and infinite_coords is empty.
    """
    hull = G.hull_points
    n = len(hull[0])
    if G.direction == "down":
        inf_coords = frozenset(i for i in range(n) if all(c[i] == 0 for c in hull))
    else:
        inf_coords = frozenset()
    keep = [i for i in range(n) if i not in inf_coords]
    d = len(keep)
    if d == 0:
        return ((tuple(ZERO for _ in range(n)),), inf_coords)
    rows = [tuple(c[i] for i in keep) for c in hull]
    cand = [(r, ONE) for r in rows] + [(tuple(ONE if j == k else ZERO for j in range(d)), ZERO) for k in range(d)]
    verts = {}
    for combo in combinations(cand, d):
        y = solve_square([c[0] for c in combo], [c[1] for c in combo])
        if y is None or any(v < 0 for v in y):
            continue
        ok = all((dot(r, y) <= 1) if G.direction == "down" else (dot(r, y) >= 1) for r in rows)
        if ok:
            full = [ZERO] * n
            for j, i in enumerate(keep):
                full[i] = y[j]
            verts[tuple(full)] = None
    return (tuple(sorted(verts)), inf_coords)


# -- expressions -------------------------------------------------------------------


def _expr_of_form(f: Form) -> Expr:
    if isinstance(f, LinearPrev):
        return Lin(f.weights)
    if isinstance(f, MinOfSub):
        return emin(*(emax(*(Lin(g) for g in b.gens)) for b in f.branches))
    if isinstance(f, MaxOfSuper):
        return emax(*(emin(*(Lin(g) for g in b.gens)) for b in f.branches))
    verts, _ = gauge_vertex_form(f)
    leaves = [Lin(v) for v in verts]
    return emax(*leaves) if f.direction == "down" else emin(*leaves)


def finite_part(P: Prevision) -> Tuple[Expr, FrozenSet[int]]:
    """PHPL expression agreeing with P wherever P is finite, and the set Z
    of coordinates on which any positive mass sends P to infinity."""
    if isinstance(P.form, GaugeForm):
        _, z = gauge_vertex_form(P.form)
        return _expr_of_form(P.form), z
    return _expr_of_form(P.form), frozenset()


def to_expr(P: Prevision) -> Expr:
    e, z = finite_part(P)
    if z:
        raise InfiniteGaugeError(f"{describe(P)} is infinite off the face where coordinates {sorted(z)} vanish")
    return e


def is_finite(P: Prevision) -> bool:
    return not finite_part(P)[1]


# -- comparison ----------------------------------------------------------------------


class Order(Enum):
    LE = "LE"
    GE = "GE"
    EQ = "EQ"


@dataclass(frozen=True)
class Incomparable:
    p_above: Point  # P > Q here
    q_above: Point  # Q > P here


Comparison = Union[Order, Incomparable]


def _lift(w: Point, keep: Sequence[int], n: int) -> Point:
    full = [ZERO] * n
    for j, i in enumerate(keep):
        full[i] = w[j]
    return tuple(full)


@lru_cache(maxsize=65536)
def leq_witness(P: Prevision, Q: Prevision) -> Optional[Point]:
    """None when P <= Q pointwise, otherwise a point where P > Q."""
    if P.n != Q.n:
        raise DimensionError(f"cannot compare dimensions {P.n} and {Q.n}")
    n = P.n
    ep, zp = finite_part(P)
    eq, zq = finite_part(Q)
    extra = sorted(zp - zq)
    if extra:
        return tuple(ONE if i == extra[0] else ZERO for i in range(n))
    keep = [i for i in range(n) if i not in zq]
    if not keep:
        return None
    diff = eq - ep
    if len(keep) < n:
        diff = restrict(diff, keep)
    verdict = verify_nonneg_ph_pl(diff)
    if isinstance(verdict, Negative):
        return _lift(verdict.witness, keep, n)
    return None


def leq(P: Prevision, Q: Prevision) -> bool:
    return leq_witness(P, Q) is None


def compare(P: Prevision, Q: Prevision) -> Comparison:
    a = leq_witness(P, Q)
    b = leq_witness(Q, P)
    if a is None and b is None:
        return Order.EQ
    if a is None:
        return Order.LE
    if b is None:
        return Order.GE
    return Incomparable(a, b)


def equal(P: Prevision, Q: Prevision) -> bool:
    return compare(P, Q) is Order.EQ


# -- classification ------------------------------------------------------------------


@dataclass(frozen=True)
class ClassFlags:
    sublinear: bool
    superlinear: bool
    subnormalized: bool
    normalized: bool


def _face_expr(P: Prevision) -> Tuple[Optional[Expr], List[int], FrozenSet[int]]:
    e, z = finite_part(P)
    keep = [i for i in range(P.n) if i not in z]
    if not keep:
        return None, keep, z
    return (restrict(e, keep) if z else e), keep, z


@lru_cache(maxsize=16384)
def active_pieces(P: Prevision) -> Tuple[Tuple[Fraction, ...], ...]:
    """The distinct linear forms P takes on full-dimensional cells of its
    arrangement (on the finite face for gauges with infinite part)."""
    e, keep, z = _face_expr(P)
    if e is None:
        return ()
    pieces = {}
    for cell in expression_cells(e):
        _, form = local_form(e, cell.sample)
        pieces[_lift(form, keep, P.n) if z else form] = None
    return tuple(pieces)


@lru_cache(maxsize=16384)
def classify(P: Prevision) -> ClassFlags:
    """Exact class flags.

    A continuous PL function is convex iff it dominates each of its pieces
    and concave iff it is dominated by each; along the direction 1 its
    slope on a cell is L(1) for the active piece L there, so (sub)normality
    is read off the pieces' masses.
    """
    e, keep, z = _face_expr(P)
    if e is None:
        return ClassFlags(True, True, False, False)
    pieces = [tuple(L[i] for i in keep) if z else L for L in active_pieces(P)]
    verts = expression_vertices(e)
    vals = [evaluate(e, v) for v in verts]
    sub = all(fv >= dot(L, v) for v, fv in zip(verts, vals) for L in pieces)
    sup = all(fv <= dot(L, v) for v, fv in zip(verts, vals) for L in pieces)
    if z:
        return ClassFlags(sub, sup, False, False)
    masses = [mass(L) for L in pieces]
    return ClassFlags(sub, sup, all(m <= 1 for m in masses), all(m == 1 for m in masses))


@dataclass(frozen=True)
class HomogenizedFlags:
    flags: ClassFlags
    certified: bool  # False when some check ran in grid mode


def classify_homogenized(P: Prevision, *, grid_denominator: int = 12) -> HomogenizedFlags:
    """Independent route to the class flags through homogenized targets.

    R(h, h') = P(h) + P(h') - P(h + h') on 2n coordinates decides sub- and
    superlinearity; Q(h, s) = s + P(h) - P(s1 + h) on n + 1 coordinates
    decides (sub)normalization.  Dimensions above the exact bound fall
    back to grid sampling and are reported as uncertified.
    """
    from .exactgeo import EXACT_MAX_DIM

    e = to_expr(P)
    n = P.n
    certified = True

    def nonneg(f: Expr) -> bool:
        nonlocal certified
        mode = "exact" if f.dim <= EXACT_MAX_DIM else "grid"
        if mode == "grid":
            certified = False
        return not isinstance(verify_nonneg_ph_pl(f, mode=mode, grid_denominator=grid_denominator), Negative)

    def coord(i, m):
        return Lin(tuple(ONE if j == i else ZERO for j in range(m)))

    m2 = 2 * n
    left = substitute(e, [coord(i, m2) for i in range(n)])
    right = substitute(e, [coord(n + i, m2) for i in range(n)])
    both = substitute(e, [Lin(tuple(ONE if j in (i, n + i) else ZERO for j in range(m2))) for i in range(n)])
    r = left + right - both
    m1 = n + 1
    s = coord(n, m1)
    ph = substitute(e, [coord(i, m1) for i in range(n)])
    shifted = substitute(e, [Lin(tuple(ONE if j in (i, n) else ZERO for j in range(m1))) for i in range(n)])
    q = s + ph - shifted
    subn = nonneg(q)
    flags = ClassFlags(nonneg(r), nonneg(-r), subn, subn and nonneg(-q))
    return HomogenizedFlags(flags, certified)


# -- normal form plumbing --------------------------------------------------------------


def _dedupe(xs):
    return tuple(dict.fromkeys(xs))


def _prune_down(gens: Iterable[Point]) -> Tuple[Point, ...]:
    """Drop generators dominated coordinatewise by another (irrelevant to a max)."""
    gs = _dedupe(gens)
    return tuple(g for g in gs if not any(o != g and all(a <= b for a, b in zip(g, o)) for o in gs))


def _prune_up(gens: Iterable[Point]) -> Tuple[Point, ...]:
    gs = _dedupe(gens)
    return tuple(g for g in gs if not any(o != g and all(a >= b for a, b in zip(g, o)) for o in gs))


def _finite_gauge(P: Prevision) -> Prevision:
    verts, z = gauge_vertex_form(P.form)
    if z:
        raise InfiniteGaugeError(f"{describe(P)} takes infinite values")
    if P.form.direction == "down":
        return Prevision(P.n, MinOfSub((DownGen(_prune_down(verts)),)))
    return Prevision(P.n, MaxOfSuper((UpGen(_prune_up(verts)),)))


def _down_branches(P: Prevision) -> Optional[Tuple[Tuple[Point, ...], ...]]:
    f = P.form
    if isinstance(f, GaugeForm):
        return _down_branches(_finite_gauge(P))
    if isinstance(f, LinearPrev):
        return ((f.weights,),)
    if isinstance(f, MinOfSub):
        return tuple(b.gens for b in f.branches)
    if all(len(b.gens) == 1 for b in f.branches):
        return (tuple(b.gens[0] for b in f.branches),)
    return None


def _up_branches(P: Prevision) -> Optional[Tuple[Tuple[Point, ...], ...]]:
    f = P.form
    if isinstance(f, GaugeForm):
        return _up_branches(_finite_gauge(P))
    if isinstance(f, LinearPrev):
        return ((f.weights,),)
    if isinstance(f, MaxOfSuper):
        return tuple(b.gens for b in f.branches)
    if all(len(b.gens) == 1 for b in f.branches):
        return (tuple(b.gens[0] for b in f.branches),)
    return None


def _from_down(n: int, branches) -> Prevision:
    bs = _dedupe(DownGen(_prune_down(b)) for b in branches)
    if len(bs) == 1 and len(bs[0].gens) == 1:
        return Prevision(n, LinearPrev(bs[0].gens[0]))
    return Prevision(n, MinOfSub(bs))


def _from_up(n: int, branches) -> Prevision:
    bs = _dedupe(UpGen(_prune_up(b)) for b in branches)
    if len(bs) == 1 and len(bs[0].gens) == 1:
        return Prevision(n, LinearPrev(bs[0].gens[0]))
    return Prevision(n, MaxOfSuper(bs))


@lru_cache(maxsize=4096)
def as_min_of_sub(P: Prevision) -> Prevision:
    """Rewrite P as a MinOfSub: min over cells c of max over the pieces
    lying below the active piece on c.  Verified pointwise before return."""
    direct = _down_branches(P)
    if direct is not None:
        return _from_down(P.n, direct)
    return _lattice_form(P, "down")


@lru_cache(maxsize=4096)
def as_max_of_super(P: Prevision) -> Prevision:
    """Rewrite P as a MaxOfSuper (max-min representation over its pieces)."""
    direct = _up_branches(P)
    if direct is not None:
        return _from_up(P.n, direct)
    return _lattice_form(P, "up")


def _lattice_form(P: Prevision, kind: str) -> Prevision:
    """Max over cells of the min of the pieces lying above the cell's piece
    there (kind "up"), or the dual min of maxes."""
    e = to_expr(P)
    cells = expression_cells(e)
    cell_pieces = [local_form(e, c.sample)[1] for c in cells]
    pieces = _dedupe(cell_pieces)
    branches = []
    for cell, g in zip(cells, cell_pieces):
        if kind == "up":
            chosen = [p for p in pieces if all(dot(p, v) >= dot(g, v) for v in cell.vertices)]
        else:
            chosen = [p for p in pieces if all(dot(p, v) <= dot(g, v) for v in cell.vertices)]
        branches.append(tuple(chosen))
    out = _from_up(P.n, branches) if kind == "up" else _from_down(P.n, branches)
    if not equal(out, P):
        raise PostconditionFailure(f"max-min rewrite of {describe(P)} is not pointwise equal")
    return out


def support_form(P: Prevision) -> Prevision:
    """Sublinear P as the support function of its active pieces."""
    if not classify(P).sublinear:
        raise ValueError(f"{describe(P)} is not sublinear")
    if not is_finite(P):
        raise InfiniteGaugeError(f"{describe(P)} takes infinite values")
    return _from_down(P.n, [active_pieces(P)])


def concave_form(P: Prevision) -> Prevision:
    """Superlinear P as the minimum of its active pieces."""
    if not classify(P).superlinear:
        raise ValueError(f"{describe(P)} is not superlinear")
    return _from_up(P.n, [active_pieces(P)])


def down_generators(P: Prevision) -> Tuple[Point, ...]:
    f = support_form(P).form
    return (f.weights,) if isinstance(f, LinearPrev) else f.branches[0].gens


def up_generators(P: Prevision) -> Tuple[Point, ...]:
    f = concave_form(P).form
    return (f.weights,) if isinstance(f, LinearPrev) else f.branches[0].gens


# -- cone / lattice operations ---------------------------------------------------------


def _scale_branches(a: Fraction, branches):
    return [tuple(tuple(a * c for c in g) for g in b) for b in branches]


def _add_branches(xs, ys):
    return [tuple(tuple(p + q for p, q in zip(g, h)) for g in bx for h in by) for bx, by in product(xs, ys)]


def _same_n(args: Sequence[Prevision]) -> int:
    if not args:
        raise ValueError("combine needs at least one prevision")
    n = args[0].n
    if any(P.n != n for P in args):
        raise DimensionError("previsions of mixed dimension")
    return n


def _branches_as(kind: str, P: Prevision):
    if kind == "down":
        b = _down_branches(P)
        return b if b is not None else _down_branches(as_min_of_sub(P))
    b = _up_branches(P)
    return b if b is not None else _up_branches(as_max_of_super(P))


def _preferred(args: Sequence[Prevision]) -> str:
    for P in args:
        if isinstance(P.form, MaxOfSuper) and _down_branches(P) is None:
            return "up"
        if isinstance(P.form, GaugeForm) and P.form.direction == "up":
            return "up"
        if isinstance(P.form, (MinOfSub, GaugeForm)):
            return "down"
    return "down"


def combine(kind: str, args: Sequence[Prevision], a: RatLike = None) -> Prevision:
    """Pointwise sup / inf / add / mix(a) / scale(a) in normal form.

    mix takes exactly two previsions and returns a*P1 + (1-a)*P2; scale
    takes exactly one.
    """
    args = list(args)
    n = _same_n(args)
    if kind == "scale":
        if len(args) != 1 or a is None:
            raise ValueError("scale takes one prevision and a factor")
        c = rat(a)
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        P = args[0]
        if isinstance(P.form, LinearPrev):
            return Prevision(n, LinearPrev(tuple(c * w for w in P.form.weights)))
        k = _preferred(args)
        br = _scale_branches(c, _branches_as(k, P))
        return _from_down(n, br) if k == "down" else _from_up(n, br)
    if kind == "mix":
        if len(args) != 2 or a is None:
            raise ValueError("mix takes two previsions and a weight")
        c = rat(a)
        if not 0 <= c <= 1:
            raise ValueError("mix weight must lie in [0, 1]")
        return combine("add", [combine("scale", [args[0]], c), combine("scale", [args[1]], 1 - c)])
    if kind == "add":
        k = _preferred(args)
        acc = _branches_as(k, args[0])
        for P in args[1:]:
            acc = _add_branches(acc, _branches_as(k, P))
        return _from_down(n, acc) if k == "down" else _from_up(n, acc)
    if kind == "sup":
        if all(_down_branches(P) is not None for P in args):
            acc = [()]
            for P in args:
                acc = [x + y for x, y in product(acc, _down_branches(P))]
            return _from_down(n, acc)
        return _from_up(n, [b for P in args for b in _branches_as("up", P)])
    if kind == "inf":
        if all(_up_branches(P) is not None for P in args):
            acc = [()]
            for P in args:
                acc = [x + y for x, y in product(acc, _up_branches(P))]
            return _from_up(n, acc)
        return _from_down(n, [b for P in args for b in _branches_as("down", P)])
    raise ValueError(f"unknown combination {kind!r}")


def unit_prevision(kind: str, A: Iterable[int], n: int) -> Prevision:
    """h -> sup_{x in A} h(x) (kind "sup") or min_{x in A} h(x) (kind "min")."""
    members = sorted(set(A))
    if any(not 0 <= x < n for x in members):
        raise ValueError(f"subset {members} is not inside a space of size {n}")
    gens = [tuple(ONE if i == x else ZERO for i in range(n)) for x in members]
    if kind == "sup":
        if not gens:
            return zero_prevision(n)
        return Prevision(n, MinOfSub((DownGen(gens),)))
    if kind == "min":
        if not gens:
            raise ValueError("min over the empty set is not a prevision")
        return Prevision(n, MaxOfSuper((UpGen(gens),)))
    raise ValueError(f"unknown kind {kind!r}")

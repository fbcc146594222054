"""Transforms between previsions and hyperspaces of sub/superlinear ones.

minP / nimP relate compact saturated convex sets of sublinear previsions
to general previsions; supP / qusP do the same for closed convex sets of
superlinear previsions.  nimP(P) and qusP(P) are infinite sets; they are
stored as their canonical prevision and exposed through membership tests.
The witness constructions make the two isomorphisms concrete at a point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Union

from .exactgeo import (
    Constraint,
    DimensionError,
    Lin,
    LinExpr,
    Optimal,
    Point,
    evaluate,
    expression_vertices,
    lp_solve,
    ones,
    point,
    simplex_extremum,
    substitute,
)
from .exactgeo.rational import RatLike, fmt_point, rat
from .powercone import HoareGen, SmythGen
from .prevcore import (
    DownGen,
    LinearPrev,
    PostconditionFailure,
    Prevision,
    UpGen,
    _finite_gauge,
    _from_down,
    _from_up,
    classify,
    combine,
    describe,
    down_generators,
    equal,
    eval_prevision,
    gauge,
    leq,
    leq_witness,
    to_expr,
    unit_prevision,
    up_generators,
    zero_prevision,
)
from .shadow import normalized_sublinear_between, shadow_gauge, subnorm_superlinear_below

ZERO = Fraction(0)
ONE = Fraction(1)


class Flavor(str, Enum):
    PLAIN = "plain"
    SUBNORM = "subnorm"
    NORM = "norm"


class FlavorError(ValueError):
    pass


def as_flavor(f: Union[str, Flavor, None]) -> Flavor:
    return Flavor.PLAIN if f is None else Flavor(f)


def flavor_holds(P: Prevision, flavor) -> bool:
    flavor = as_flavor(flavor)
    if flavor is Flavor.PLAIN:
        return True
    flags = classify(P)
    return flags.subnormalized if flavor is Flavor.SUBNORM else flags.normalized


def _require_flavor(P: Prevision, flavor: Flavor) -> None:
    if not flavor_holds(P, flavor):
        raise FlavorError(f"{describe(P)} does not satisfy the {flavor.value} flavor")


# -- minP / supP ---------------------------------------------------------------------


def minP(Q: SmythGen) -> Prevision:
    """h -> min over the generators; branches are the generators' bodies."""
    for g in Q.gens:
        if not classify(g).sublinear:
            raise ValueError(f"Smyth generator {describe(g)} is not sublinear")
    return _from_down(Q.n, [down_generators(g) for g in Q.gens])


def supP(C: HoareGen) -> Prevision:
    """h -> max over the generators."""
    for g in C.gens:
        if not classify(g).superlinear:
            raise ValueError(f"Hoare generator {describe(g)} is not superlinear")
    return _from_up(C.n, [up_generators(g) for g in C.gens])


# -- canonical wrappers ------------------------------------------------------------------


@dataclass(frozen=True)
class QPredSub:
    """{F sublinear (of the flavor) : F >= canonical}"""

    canonical: Prevision
    flavor: Flavor = Flavor.PLAIN


@dataclass(frozen=True)
class CPredSuper:
    """{F superlinear (of the flavor) : F <= canonical}, or every superlinear
    prevision when top is set."""

    canonical: Optional[Prevision]
    top: bool = False
    flavor: Flavor = Flavor.PLAIN
    n: int = 0

    @staticmethod
    def whole(n: int, flavor=Flavor.PLAIN) -> "CPredSuper":
        return CPredSuper(None, True, as_flavor(flavor), n)

    def __post_init__(self):
        if not self.top and self.canonical is None:
            raise ValueError("a non-top CPredSuper needs a canonical prevision")
        if self.canonical is not None and self.n == 0:
            object.__setattr__(self, "n", self.canonical.n)


def nimP(P: Prevision, flavor=Flavor.PLAIN) -> QPredSub:
    flavor = as_flavor(flavor)
    _require_flavor(P, flavor)
    return QPredSub(P, flavor)


def qusP(P: Prevision, flavor=Flavor.PLAIN) -> CPredSuper:
    flavor = as_flavor(flavor)
    _require_flavor(P, flavor)
    return CPredSuper(P, False, flavor)


def member_nim(Q: QPredSub, F: Prevision, flavor=None) -> bool:
    flavor = Q.flavor if flavor is None else as_flavor(flavor)
    return classify(F).sublinear and flavor_holds(F, flavor) and leq(Q.canonical, F)


def member_qus(C: CPredSuper, F: Prevision, flavor=None) -> bool:
    flavor = C.flavor if flavor is None else as_flavor(flavor)
    if not (classify(F).superlinear and flavor_holds(F, flavor)):
        return False
    return C.top or leq(F, C.canonical)


# -- sandwich ------------------------------------------------------------------------------


@dataclass(frozen=True)
class DominationFailure:
    witness: Point  # q(witness) > p(witness)


def sandwich(q: UpGen, p: DownGen, flavor=Flavor.PLAIN) -> Union[LinearPrev, DominationFailure]:
    """A linear w with min_k <q_k,.> <= <w,.> <= max_j <p_j,.>, by LP.

    Flavors add the mass constraint (<= 1 or = 1).  The inputs must be of
    the flavor themselves, otherwise the mass constraint could fail for
    reasons unrelated to domination.
    """
    flavor = as_flavor(flavor)
    n = len(q.gens[0])
    if len(p.gens[0]) != n:
        raise DimensionError("q and p differ in dimension")
    Fq = Prevision(n, _as_up_form(q))
    Fp = Prevision(n, _as_down_form(p))
    if flavor is not Flavor.PLAIN:
        _require_flavor(Fq if flavor is Flavor.NORM else Fp, flavor)
        _require_flavor(Fp, flavor)
    kq, kp = len(q.gens), len(p.gens)
    nv = n + kq + kp

    def row(ws=(), lam=(), mu=()):
        r = [ZERO] * nv
        for i, c in ws:
            r[i] += c
        for k, c in lam:
            r[n + k] += c
        for j, c in mu:
            r[n + kq + j] += c
        return tuple(r)

    cons = []
    for k in range(kq):
        cons.append(Constraint(LinExpr(row(lam=[(k, ONE)])), ">="))
    for j in range(kp):
        cons.append(Constraint(LinExpr(row(mu=[(j, ONE)])), ">="))
    cons.append(Constraint(LinExpr(row(lam=[(k, ONE) for k in range(kq)]), -ONE), "=="))
    cons.append(Constraint(LinExpr(row(mu=[(j, ONE) for j in range(kp)]), -ONE), "=="))
    for i in range(n):
        cons.append(Constraint(LinExpr(row(ws=[(i, ONE)], lam=[(k, -q.gens[k][i]) for k in range(kq)])), ">="))
        cons.append(Constraint(LinExpr(row(ws=[(i, -ONE)], mu=[(j, p.gens[j][i]) for j in range(kp)])), ">="))
    if flavor is not Flavor.PLAIN:
        cons.append(Constraint(LinExpr(row(ws=[(i, ONE) for i in range(n)]), -ONE), "<=" if flavor is Flavor.SUBNORM else "=="))
    res = lp_solve("min", LinExpr((ZERO,) * nv), cons, lexicographic=False)
    if isinstance(res, Optimal):
        w = LinearPrev(res.witness[:n])
        W = Prevision(n, w)
        if not (leq(Fq, W) and leq(W, Fp)):
            raise PostconditionFailure("sandwich LP returned a non-separating w")
        return w
    wit = leq_witness(Fq, Fp)
    if wit is None:
        raise PostconditionFailure("sandwich LP infeasible although q <= p")
    return DominationFailure(_primitive(wit))


def _primitive(v: Point) -> Point:
    """Positive multiple of v with coprime integer coordinates."""
    lcm = 1
    for c in v:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in v]
    g = 0
    for k in ints:
        g = gcd(g, k)
    return tuple(Fraction(k // g) for k in ints) if g else v


def _as_up_form(q: UpGen):
    from .prevcore import MaxOfSuper

    return MaxOfSuper((q,))


def _as_down_form(p: DownGen):
    from .prevcore import MinOfSub

    return MinOfSub((p,))


# -- orthogonal families ------------------------------------------------------------------------


def orthogonal_family(direction: str, fam: Sequence[Prevision], flavor=Flavor.PLAIN, *, n: int = None):
    """A^perp for a family of superlinear previsions (superToSub) or the
    dual perp of a family of sublinear ones (subToSuper)."""
    flavor = as_flavor(flavor)
    fam = list(fam)
    if direction == "superToSub":
        for F in fam:
            if not classify(F).superlinear:
                raise ValueError(f"{describe(F)} is not superlinear")
        if not fam:
            if n is None:
                raise ValueError("an empty family needs the dimension n")
            least = unit_prevision("min", range(n), n) if flavor is Flavor.NORM else zero_prevision(n)
            return nimP(least, flavor)
        return nimP(combine("sup", fam), flavor)
    if direction == "subToSuper":
        for F in fam:
            if not classify(F).sublinear:
                raise ValueError(f"{describe(F)} is not sublinear")
        if not fam:
            if n is None:
                raise ValueError("an empty family needs the dimension n")
            return CPredSuper.whole(n, flavor)
        return qusP(combine("inf", fam), flavor)
    raise ValueError(f"unknown direction {direction!r}")


# -- witnesses for the isomorphisms ----------------------------------------------------------------


def _strict_point(P: Prevision, h) -> Point:
    x = point(h)
    if len(x) != P.n:
        raise DimensionError("dimension mismatch")
    if any(c == 0 for c in x):
        raise ValueError(f"witness constructions need a strictly positive point, got {fmt_point(x)}")
    return x


def tight_sublinear_witness(P: Prevision, h, flavor=Flavor.PLAIN) -> Prevision:
    """Sublinear F >= P (of the flavor) with F(h) = P(h)."""
    flavor = as_flavor(flavor)
    x = _strict_point(P, h)
    ph = eval_prevision(P, x)
    if ph <= 0:
        raise ValueError("P(h) must be positive")
    _require_flavor(P, flavor)
    n = P.n
    if flavor is Flavor.PLAIN:
        F = _from_down(n, [[tuple(ph / x[i] if j == i else ZERO for j in range(n)) for i in range(n)]])
    else:
        F = _finite_gauge(gauge([tuple(c / ph for c in x), ones(n)], "down"))
        if flavor is Flavor.NORM:
            F = normalized_sublinear_between(P, F)
    if not (classify(F).sublinear and flavor_holds(F, flavor) and leq(P, F) and eval_prevision(F, x) == ph):
        raise PostconditionFailure(f"tight witness {describe(F)} fails verification")
    return F


@dataclass(frozen=True)
class CornerWitness:
    witness: Prevision
    delta: Fraction
    used_fallback: bool


def _two_ray_hull(a: Point) -> List[Point]:
    return [ones(len(a)), a]


def corner_superlinear_report(P: Prevision, h, r: RatLike, flavor=Flavor.PLAIN) -> CornerWitness:
    """corner_superlinear_witness with the chosen delta and whether the norm
    flavor needed the shadow fallback."""
    flavor = as_flavor(flavor)
    x = _strict_point(P, h)
    r = rat(r)
    ph = eval_prevision(P, x)
    if not 0 < r < ph:
        raise ValueError(f"need 0 < r < P(h) = {ph}, got r = {r}")
    _require_flavor(P, flavor)
    n = P.n
    delta = (1 - r / ph) / 2
    a = tuple((1 - delta) * c / r for c in x)
    plain = _from_up(n, [[tuple(ONE / a[i] if j == i else ZERO for j in range(n)) for i in range(n)]])
    fallback = False
    if flavor is Flavor.PLAIN:
        F = plain
    elif flavor is Flavor.SUBNORM:
        F = subnorm_superlinear_below(P, plain)
    else:
        F = _finite_gauge(gauge(_two_ray_hull(a), "up"))
        if not classify(F).subnormalized:
            fallback = True
            F = shadow_gauge(F)
    ok = classify(F).superlinear and flavor_holds(F, flavor) and leq(F, P) and eval_prevision(F, x) > r
    if not ok:
        raise PostconditionFailure(f"corner witness {describe(F)} fails verification")
    return CornerWitness(F, delta, fallback)


def corner_superlinear_witness(P: Prevision, h, r: RatLike, flavor=Flavor.PLAIN) -> Prevision:
    """Superlinear F <= P (of the flavor) with F(h) > r."""
    return corner_superlinear_report(P, h, r, flavor).witness


# -- box / diamond criteria ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Holds:
    value: object  # a point of the simplex (box) or a witness prevision (diamond)
    extremum: Fraction


@dataclass(frozen=True)
class Fails:
    value: object
    extremum: Fraction


def _along_hull(P: Prevision, hs: Sequence[Point]):
    """a -> P(sum_i a_i h_i) as a PHPL expression on the k-simplex."""
    n = P.n
    if any(len(h) != n for h in hs):
        raise DimensionError("points of the wrong dimension")
    k = len(hs)
    cols = [Lin(tuple(hs[j][i] for j in range(k))) for i in range(n)]
    return substitute(to_expr(P), cols)


def box_union_criterion(P: Prevision, hs: Sequence) -> Union[Holds, Fails]:
    """Is sup over the simplex of P(sum a_i h_i) > 1?"""
    hs = [point(h) for h in hs]
    if not hs:
        raise ValueError("need at least one point")
    best, a = simplex_extremum(_along_hull(P, hs), "max")
    if best > 1:
        return Holds(a, best)
    F = gauge(hs, "down")
    if not (leq(P, F) and all(eval_prevision(F, h) <= 1 for h in hs)):
        raise PostconditionFailure("box criterion witness fails verification")
    return Fails(F, best)


def dia_intersection_criterion(P: Prevision, hs: Sequence) -> Union[Holds, Fails]:
    """Is inf over the simplex of P(sum a_i h_i) > 1?"""
    hs = [point(h) for h in hs]
    if not hs:
        raise ValueError("need at least one point")
    if any(c == 0 for h in hs for c in h):
        raise ValueError("diamond criterion needs strictly positive points")
    m, a = simplex_extremum(_along_hull(P, hs), "min")
    if m <= 1:
        return Fails(a, m)
    delta = (1 - 1 / m) / 2
    F = gauge([tuple((1 - delta) * c for c in h) for h in hs], "up")
    if not (leq(F, P) and all(eval_prevision(F, h) > 1 for h in hs)):
        raise PostconditionFailure("diamond criterion witness fails verification")
    return Holds(F, m)


# -- mixtures ---------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def mix_dominance_range(T: Prevision, P1: Prevision, P2: Prevision) -> Optional[Interval]:
    """{a in [0,1] : T >= a P1 + (1-a) P2}, or None when empty."""
    et, e1, e2 = to_expr(T), to_expr(P1), to_expr(P2)
    lo, hi = ZERO, ONE
    for v in expression_vertices(et + e1 + e2):
        A = evaluate(et, v) - evaluate(e2, v)
        B = evaluate(e1, v) - evaluate(e2, v)
        # need A - a B >= 0
        if B > 0:
            hi = min(hi, A / B)
        elif B < 0:
            lo = max(lo, A / B)
        elif A < 0:
            return None
    return Interval(lo, hi) if lo <= hi else None


# -- double orthogonals ----------------------------------------------------------------------------------


def double_orthogonal_roundtrip(x: Union[QPredSub, CPredSuper]):
    """nimP . supP . qusP . minP (or the dual) through canonical forms."""
    if isinstance(x, QPredSub):
        p = x.canonical  # minP(nimP(P)) = P
        c = qusP(p, x.flavor)
        p2 = c.canonical  # supP(qusP(P)) = P
        out = nimP(p2, x.flavor)
        if not equal(out.canonical, x.canonical):
            raise PostconditionFailure("double orthogonal round trip changed the element")
        return out
    if isinstance(x, CPredSuper):
        if x.top:
            return x
        p = x.canonical
        q = nimP(p, x.flavor)
        out = qusP(q.canonical, x.flavor)
        if not equal(out.canonical, x.canonical):
            raise PostconditionFailure("double orthogonal round trip changed the element")
        return out
    raise TypeError("expected a QPredSub or CPredSuper")

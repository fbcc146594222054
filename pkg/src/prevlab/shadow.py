"""Cast shadows at the constant function 1 and the two normalization
envelopes built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactgeo import (
    EXACT_MAX_DIM,
    Expr,
    ExactModeBoundError,
    Lin,
    Negative,
    Point,
    evaluate,
    kink_forms,
    ones,
    piece_forms,
    point,
    simplex_vertices,
    substitute,
    verify_nonneg_ph_pl,
)
from .exactgeo.rational import RatLike, mass, rat
from .prevcore import (
    PostconditionFailure,
    Prevision,
    _branches_as,
    _from_down,
    _from_up,
    classify,
    describe,
    down_generators,
    eval_prevision,
    leq,
    to_expr,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class ImproperShadow(ValueError):
    """The shadow would contain the zero function (G(1) > 1)."""


@dataclass(frozen=True)
class ShadowParams:
    """shd(base, alpha); base None stands for the constant function 1."""

    alpha: Fraction
    base: Optional[Point] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", rat(self.alpha))
        if not 0 <= self.alpha <= 1:
            raise ValueError("alpha must lie in [0, 1]")

    def apply(self, x: Sequence[RatLike]) -> Point:
        base = self.base if self.base is not None else ones(len(x))
        return shd(base, self.alpha, x)


def shd(x0: Sequence[RatLike], alpha: RatLike, x: Sequence[RatLike]) -> Point:
    """alpha*x + (1-alpha)*x0"""
    a = rat(alpha)
    if not 0 <= a <= 1:
        raise ValueError(f"alpha={a} is outside [0, 1]")
    x0, x = point(x0), point(x)
    if len(x0) != len(x):
        raise ValueError("base point and argument differ in dimension")
    return tuple(a * xi + (1 - a) * bi for xi, bi in zip(x, x0))


def _coords(m: int) -> List[Expr]:
    return [Lin(tuple(ONE if j == i else ZERO for j in range(m))) for i in range(m)]


def _require_exact(dim: int) -> None:
    if dim > EXACT_MAX_DIM:
        raise ExactModeBoundError(f"homogenized check needs dimension {dim} > {EXACT_MAX_DIM}")


def shadow_stable(P: Prevision) -> bool:
    """Is {P > 1} closed under preimages of every shd(1, alpha)?

    Writing alpha = 1/(1+v), the condition P(h) <= 1 => P(alpha h +
    (1-alpha) 1) <= 1 for all alpha in (0,1] becomes, after scaling h,
    P(h + v 1) <= P(h) + v for all h, v >= 0: a PHPL sign question on n+1
    coordinates.
    """
    n = P.n
    _require_exact(n + 1)
    e = to_expr(P)
    xs = _coords(n + 1)
    v = xs[n]
    shifted = substitute(e, [xs[i] + v for i in range(n)])
    q = v + substitute(e, xs[:n]) - shifted
    return not isinstance(verify_nonneg_ph_pl(q), Negative)


def shadow_preimage_stable(F: Prevision, alpha: RatLike) -> bool:
    """Certify shd(1, alpha)^-1({F > 1}) is inside {F > 1} for one alpha.

    Homogenized: s - F(alpha h + (1-alpha) s 1) >= 0 on the region
    s >= F(h) of the (h, s) orthant.  Both sides are linear on every cell
    of the arrangement cut by their kinks and by the pieces of s - F(h),
    so checking the arrangement vertices inside the region is exact.
    """
    a = rat(alpha)
    n = F.n
    _require_exact(n + 1)
    e = to_expr(F)
    xs = _coords(n + 1)
    s = xs[n]
    target = s - substitute(e, [a * xs[i] + (1 - a) * s for i in range(n)])
    region = s - substitute(e, xs[:n])
    forms = kink_forms(target) + kink_forms(region) + piece_forms(region)
    for v in simplex_vertices(forms, n + 1):
        if evaluate(region, v) >= 0 and evaluate(target, v) < 0:
            return False
    return True


def _shadow_branch(gens: Sequence[Point]) -> Tuple[Point, ...]:
    """sup_{v >= 0} min_i <l_i, h + v 1> - v as a minimum of linear forms.

    By LP duality this is the min over vertices of {lambda in simplex :
    sum lambda_i c_i <= 1}, c_i = l_i(1): unit vectors with c_i <= 1 and
    the two-point mixtures hitting c = 1 on edges with c_i < 1 < c_j.
    """
    cs = [mass(g) for g in gens]
    out = [g for g, c in zip(gens, cs) if c <= 1]
    for i, (gi, ci) in enumerate(zip(gens, cs)):
        if ci >= 1:
            continue
        for gj, cj in zip(gens, cs):
            if cj > 1:
                li = (cj - 1) / (cj - ci)
                lj = (1 - ci) / (cj - ci)
                out.append(tuple(li * a + lj * b for a, b in zip(gi, gj)))
    return tuple(out)


def shadow_gauge(G: Prevision) -> Prevision:
    """Gauge F of the shadow of {G > 1} at 1.

    F(h) = sup{r > 0 : G((b/r) h + (1-b) 1) > 1 for some b in (0,1]},
    which equals sup_{v >= 0} G(h + v 1) - v.  Computed branchwise on a
    max-of-min form of G.
    """
    g1 = eval_prevision(G, ones(G.n))
    if g1 > 1:
        raise ImproperShadow(f"G(1) = {g1} > 1: the shadow contains the zero function")
    branches = [_shadow_branch(b) for b in _branches_as("up", G)]
    return _from_up(G.n, branches)


def subnorm_superlinear_below(P: Prevision, F0: Prevision) -> Prevision:
    """A subnormalized superlinear F with F0 <= F <= P."""
    if not classify(P).subnormalized:
        raise ValueError(f"{describe(P)} is not subnormalized")
    if not classify(F0).superlinear:
        raise ValueError(f"{describe(F0)} is not superlinear")
    if not leq(F0, P):
        raise ValueError("F0 is not below P")
    F = shadow_gauge(F0)
    flags = classify(F)
    if not (flags.superlinear and flags.subnormalized and leq(F0, F) and leq(F, P)):
        raise PostconditionFailure(f"subnorm_superlinear_below produced {describe(F)} with {flags}")
    return F


def _shadow_closure(gens: Sequence[Point]) -> Tuple[Point, ...]:
    """Constraints <g, h> <= 1 of C0 that survive the union over beta in
    (0,1] of shd(1, beta)^-1(C0).

    Each constraint reads beta (<g,h> - c) <= 1 - c with c = g(1).  For
    c < 1 the right side is positive, so small enough beta satisfies it and
    the constraint dissolves.  For c = 1 it reduces to <g,h> <= 1 for every
    beta > 0.  c > 1 cannot occur for subnormalized F0.
    """
    kept = []
    for g in gens:
        c = mass(g)
        if c > 1:
            raise ValueError("constraint with g(1) > 1: F0 is not subnormalized")
        if c == 1:
            kept.append(g)
    return tuple(kept)


def normalized_sublinear_between(P: Prevision, F0: Prevision) -> Prevision:
    """A normalized sublinear F with P <= F <= F0."""
    if not classify(P).normalized:
        raise ValueError(f"{describe(P)} is not normalized")
    f0 = classify(F0)
    if not (f0.sublinear and f0.subnormalized):
        raise ValueError(f"{describe(F0)} is not a subnormalized sublinear prevision")
    if not leq(P, F0):
        raise ValueError("P is not below F0")
    if eval_prevision(F0, ones(F0.n)) < 1:
        raise ValueError("F0(1) < 1")
    kept = _shadow_closure(down_generators(F0))
    if not kept:
        raise PostconditionFailure("shadow closure left no constraint")
    F = _from_down(P.n, [kept])
    flags = classify(F)
    if not (flags.sublinear and flags.normalized and leq(P, F) and leq(F, F0)):
        raise PostconditionFailure(f"normalized_sublinear_between produced {describe(F)} with {flags}")
    return F

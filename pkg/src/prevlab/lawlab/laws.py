"""Registered algebraic laws, each checked on one random instance per trial.

Laws call into the library through module attributes so that mutants
installed by `mutants.inject` are seen.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict

from .. import powercone, prevcore, shadow, transforms
from ..exactgeo import delta_grid, dot, fmt_point, ones
from ..prevcore import Order, Prevision, describe
from ..transforms import Flavor
from .generate import GenParams, random_point, random_prevision, random_sublinear, random_superlinear, random_weight


class LawViolation(AssertionError):
    pass


@dataclass
class Trial:
    rng: random.Random
    n: int
    inputs: Dict[str, str] = field(default_factory=dict)

    def note(self, **kw) -> None:
        for k, v in kw.items():
            self.inputs[k] = _show(v)

    def prevision(self, name: str, flavor: Flavor = Flavor.PLAIN, **kw) -> Prevision:
        P = random_prevision(self.rng.randrange(2**32), GenParams(n=self.n, flavor=flavor, **kw))
        self.note(**{name: P})
        return P


def _show(v) -> str:
    if isinstance(v, Prevision):
        return describe(v)
    if isinstance(v, tuple) and v and all(isinstance(c, Fraction) for c in v):
        return fmt_point(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    return str(v)


def check(cond: bool, message: str) -> None:
    if not cond:
        raise LawViolation(message)


@dataclass(frozen=True)
class Law:
    name: str
    run: Callable[[Trial], None]
    max_n: int = 3


REGISTRY: Dict[str, Law] = {}


def law(name: str, max_n: int = 3):
    def deco(fn):
        REGISTRY[name] = Law(name, fn, max_n)
        return fn

    return deco


def _eq(P, Q) -> bool:
    return prevcore.compare(P, Q) is Order.EQ


# -- prevcore -----------------------------------------------------------------------


@law("prevcore.homogeneity")
def _homogeneity(t: Trial):
    P = t.prevision("P")
    h = random_point(t.rng, t.n)
    t.note(h=h)
    for a in (Fraction(0), Fraction(1, 2), Fraction(2), Fraction(7, 3)):
        check(prevcore.eval_prevision(P, tuple(a * c for c in h)) == a * prevcore.eval_prevision(P, h), f"fails at a={a}")


@law("prevcore.monotone")
def _monotone(t: Trial):
    P = t.prevision("P")
    h = random_point(t.rng, t.n)
    bump = random_point(t.rng, t.n)
    h2 = tuple(x + y for x, y in zip(h, bump))
    t.note(h=h, h2=h2)
    check(prevcore.eval_prevision(P, h) <= prevcore.eval_prevision(P, h2), "P(h) > P(h') although h <= h'")
    check(prevcore.eval_prevision(P, (Fraction(0),) * t.n) == 0, "P(0) != 0")


@law("prevcore.support-subnormalized")
def _support_subnorm(t: Trial):
    P = random_sublinear(t.rng, t.n, Flavor.SUBNORM)
    t.note(P=P)
    check(prevcore.classify(P).subnormalized, "support form with mass <= 1 not subnormalized")


@law("prevcore.lattice-preserves-class")
def _lattice(t: Trial):
    subs = [random_sublinear(t.rng, t.n) for _ in range(t.rng.randint(1, 3))]
    sups = [random_superlinear(t.rng, t.n) for _ in range(t.rng.randint(1, 3))]
    t.note(subs=subs, sups=sups)
    check(prevcore.classify(prevcore.combine("sup", subs)).sublinear, "sup of sublinear is not sublinear")
    check(prevcore.classify(prevcore.combine("inf", sups)).superlinear, "inf of superlinear is not superlinear")


@law("prevcore.choquet")
def _choquet(t: Trial):
    w = prevcore.LinearPrev(random_point(t.rng, t.n))
    h = random_point(t.rng, t.n)
    t.note(w=w.weights, h=h)
    check(prevcore.choquet_eval(w, h) == dot(w.weights, h), "Choquet integral differs from the inner product")


@law("prevcore.min-unit-below-normalized")
def _min_unit(t: Trial):
    P = t.prevision("P", Flavor.NORM)
    U = prevcore.unit_prevision("min", range(t.n), t.n)
    check(prevcore.leq(U, P), "min_x h(x) is not below a normalized prevision")


@law("prevcore.classify-routes-agree", max_n=2)
def _routes(t: Trial):
    P = t.prevision("P")
    a = prevcore.classify(P)
    b = prevcore.classify_homogenized(P)
    check(a.subnormalized == b.flags.subnormalized, "subnormalized flags disagree")
    check(a.normalized == b.flags.normalized, "normalized flags disagree")
    if b.certified:
        check(a == b.flags, f"flags disagree: {a} vs {b.flags}")
    else:
        # grid mode only refutes
        check(b.flags.sublinear or not a.sublinear, "grid found a sublinearity violation in a sublinear P")
        check(b.flags.superlinear or not a.superlinear, "grid found a superlinearity violation in a superlinear P")


# -- shadow -------------------------------------------------------------------------


@law("shadow.criterion", max_n=2)
def _shadow_criterion(t: Trial):
    P = t.prevision("P", t.rng.choice(list(Flavor)))
    check(shadow.shadow_stable(P) == prevcore.classify(P).subnormalized, "shadow criterion disagrees with the definition")


@law("shadow.composition")
def _shd_comp(t: Trial):
    x0 = random_point(t.rng, t.n)
    x = random_point(t.rng, t.n)
    a = Fraction(t.rng.randint(0, 8), 8)
    b = Fraction(t.rng.randint(0, 8), 8)
    t.note(x0=x0, x=x, alpha=a, beta=b)
    check(shadow.shd(x0, b, shadow.shd(x0, a, x)) == shadow.shd(x0, a * b, x), "shd composition law fails")


def _proper_G(t: Trial) -> Prevision:
    G = t.prevision("G")
    g1 = prevcore.eval_prevision(G, ones(t.n))
    if g1 > 1:
        G = prevcore.combine("scale", [G], 1 / g1)
        t.note(G=G)
    return G


@law("shadow.gauge-preimage-stable", max_n=2)
def _shadow_stable_out(t: Trial):
    G = _proper_G(t)
    F = shadow.shadow_gauge(G)
    t.note(F=F)
    for a in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        check(shadow.shadow_preimage_stable(F, a), f"shadow gauge output not stable at alpha={a}")
    check(prevcore.leq(G, F), "shadow gauge is below G somewhere")


@law("shadow.gauge-keeps-convexity", max_n=2)
def _shadow_convex(t: Trial):
    G = random_sublinear(t.rng, t.n, Flavor.SUBNORM)
    t.note(G=G)
    check(prevcore.classify(shadow.shadow_gauge(G)).sublinear, "shadow of a convex complement lost convexity")


@law("shadow.subnorm-superlinear-below")
def _subnorm_below(t: Trial):
    P = t.prevision("P", Flavor.SUBNORM)
    h = random_point(t.rng, t.n, positive=True)
    F0 = transforms.corner_superlinear_witness(P, h, prevcore.eval_prevision(P, h) / 2)
    t.note(h=h, F0=F0)
    shadow.subnorm_superlinear_below(P, F0)


@law("shadow.normalized-sublinear-between")
def _norm_between(t: Trial):
    P = t.prevision("P", Flavor.NORM)
    h = random_point(t.rng, t.n, positive=True)
    ph = prevcore.eval_prevision(P, h)
    F0 = prevcore._finite_gauge(prevcore.gauge([tuple(c / ph for c in h), ones(t.n)], "down"))
    t.note(h=h, F0=F0)
    shadow.normalized_sublinear_between(P, F0)


# -- powercone / minP / supP -----------------------------------------------------------


def _smyth(t: Trial, name: str, flavor=Flavor.PLAIN) -> powercone.SmythGen:
    Q = powercone.SmythGen(tuple(random_sublinear(t.rng, t.n, flavor) for _ in range(t.rng.randint(1, 3))))
    t.note(**{name: Q.gens})
    return Q


def _hoare(t: Trial, name: str, flavor=Flavor.PLAIN) -> powercone.HoareGen:
    C = powercone.HoareGen(tuple(random_superlinear(t.rng, t.n, flavor) for _ in range(t.rng.randint(1, 3))))
    t.note(**{name: C.gens})
    return C


@law("minP.preserves-inf")
def _minp_inf(t: Trial):
    Q1, Q2 = _smyth(t, "Q1"), _smyth(t, "Q2")
    lhs = transforms.minP(powercone.cone_op("smyth_inf", [Q1, Q2]))
    rhs = prevcore.combine("inf", [transforms.minP(Q1), transforms.minP(Q2)])
    check(_eq(lhs, rhs), "minP does not preserve binary infima")


@law("minP.affine")
def _minp_affine(t: Trial):
    Q1, Q2 = _smyth(t, "Q1"), _smyth(t, "Q2")
    a = Fraction(t.rng.randint(0, 8), 8)
    t.note(a=a)
    lhs = transforms.minP(powercone.cone_op("mix", [Q1, Q2], a))
    rhs = prevcore.combine("mix", [transforms.minP(Q1), transforms.minP(Q2)], a)
    check(_eq(lhs, rhs), "minP is not affine")


@law("supP.preserves-sup")
def _supp_sup(t: Trial):
    C1, C2 = _hoare(t, "C1"), _hoare(t, "C2")
    lhs = transforms.supP(powercone.cone_op("hoare_sup", [C1, C2]))
    rhs = prevcore.combine("sup", [transforms.supP(C1), transforms.supP(C2)])
    check(_eq(lhs, rhs), "supP does not preserve binary suprema")


@law("supP.affine")
def _supp_affine(t: Trial):
    C1, C2 = _hoare(t, "C1"), _hoare(t, "C2")
    a = Fraction(t.rng.randint(0, 8), 8)
    t.note(a=a)
    lhs = transforms.supP(powercone.cone_op("mix", [C1, C2], a))
    rhs = prevcore.combine("mix", [transforms.supP(C1), transforms.supP(C2)], a)
    check(_eq(lhs, rhs), "supP is not affine")


@law("supP.hull-invariant")
def _hull(t: Trial):
    C = _hoare(t, "C")
    if len(C.gens) > 1:
        a = Fraction(t.rng.randint(0, 8), 8)
        extra = prevcore.combine("mix", [C.gens[0], C.gens[1]], a)
    else:
        extra = C.gens[0]
    bigger = powercone.HoareGen(C.gens + (extra,))
    check(_eq(transforms.supP(bigger), transforms.supP(C)), "adding a convex combination changed supP")


@law("powercone.canonicalize")
def _canon(t: Trial):
    Q = _smyth(t, "Q")
    Q = powercone.SmythGen(Q.gens + (prevcore.combine("scale", [Q.gens[0]], 2),))
    c1 = powercone.canonicalize(Q)
    check(_eq(transforms.minP(c1), transforms.minP(Q)), "canonicalize changed minP")
    check(powercone.canonicalize(c1) == c1, "canonicalize is not idempotent")
    C = _hoare(t, "C")
    d1 = powercone.canonicalize(C)
    check(_eq(transforms.supP(d1), transforms.supP(C)), "canonicalize changed supP")
    check(powercone.canonicalize(d1) == d1, "canonicalize is not idempotent (Hoare)")


@law("minP.retraction")
def _retraction(t: Trial):
    Q = _smyth(t, "Q")
    P = transforms.minP(Q)
    t.note(minP=P)
    target = transforms.nimP(P)
    for g in Q.gens:
        if not transforms.member_nim(target, g):
            w = prevcore.leq_witness(target.canonical, g)
            where = f"; P > g at {fmt_point(w)}" if w is not None else ""
            raise LawViolation(f"generator {describe(g)} not in nimP(minP(Q)){where}")


# -- transforms -------------------------------------------------------------------------


def _grid_point(t: Trial):
    pts = [p for p in delta_grid(t.n, 8) if all(c > 0 for c in p)]
    return t.rng.choice(pts)


@law("iso.first")
def _first_iso(t: Trial):
    P = t.prevision("P")
    h = _grid_point(t)
    t.note(h=h)
    for fl in Flavor:
        if transforms.flavor_holds(P, fl):
            F = transforms.tight_sublinear_witness(P, h, fl)
            check(prevcore.leq(P, F), f"{fl.value}: witness not above P")
            check(prevcore.eval_prevision(F, h) == prevcore.eval_prevision(P, h), f"{fl.value}: F(h) != P(h)")


@law("iso.second")
def _second_iso(t: Trial):
    P = t.prevision("P")
    h = _grid_point(t)
    r = prevcore.eval_prevision(P, h) * Fraction(15, 16)
    t.note(h=h, r=r)
    for fl in Flavor:
        if transforms.flavor_holds(P, fl):
            F = transforms.corner_superlinear_witness(P, h, r, fl)
            check(prevcore.leq(F, P), f"{fl.value}: witness not below P")
            check(prevcore.eval_prevision(F, h) > r, f"{fl.value}: F(h) <= r")


@law("iso.second-norm")
def _second_iso_norm(t: Trial):
    P = t.prevision("P", Flavor.NORM)
    h = _grid_point(t)
    r = prevcore.eval_prevision(P, h) * Fraction(15, 16)
    t.note(h=h, r=r)
    rep = transforms.corner_superlinear_report(P, h, r, Flavor.NORM)
    F = rep.witness
    check(prevcore.classify(F).normalized and prevcore.leq(F, P), "norm corner witness invalid")
    # rebuild the gauge of up-conv{1, a} independently and compare
    a = tuple((1 - rep.delta) * c / r for c in h)
    G = prevcore._finite_gauge(prevcore.gauge([ones(t.n), a], "up"))
    expected = shadow.shadow_gauge(G) if rep.used_fallback else G
    check(_eq(F, expected), f"witness {describe(F)} is not the two-ray gauge {describe(expected)}")
    check(rep.used_fallback or prevcore.eval_prevision(F, ones(t.n)) >= 1, "two-ray gauge below 1 at the constant 1")


@law("sandwich.domination")
def _sandwich(t: Trial):
    q = prevcore.UpGen(tuple(random_weight(t.rng, t.n, 8, Flavor.PLAIN) for _ in range(t.rng.randint(1, 3))))
    p = prevcore.DownGen(tuple(random_weight(t.rng, t.n, 8, Flavor.PLAIN) for _ in range(t.rng.randint(1, 3))))
    t.note(q=q.gens, p=p.gens)
    Fq = Prevision(t.n, prevcore.MaxOfSuper((q,)))
    Fp = Prevision(t.n, prevcore.MinOfSub((p,)))
    res = transforms.sandwich(q, p)
    dominated = prevcore.leq(Fq, Fp)
    if isinstance(res, transforms.DominationFailure):
        check(not dominated, "sandwich failed although q <= p")
        check(prevcore.eval_prevision(Fq, res.witness) > prevcore.eval_prevision(Fp, res.witness), "bad failure witness")
    else:
        W = Prevision(t.n, res)
        check(dominated and prevcore.leq(Fq, W) and prevcore.leq(W, Fp), "sandwich returned a bad w")


@law("criterion.box")
def _box(t: Trial):
    P = t.prevision("P")
    hs = [random_point(t.rng, t.n) for _ in range(t.rng.randint(1, 3))]
    t.note(hs=hs)
    res = transforms.box_union_criterion(P, hs)
    if isinstance(res, transforms.Holds):
        a = res.value
        mix = tuple(sum(ai * h[i] for ai, h in zip(a, hs)) for i in range(t.n))
        check(prevcore.eval_prevision(P, mix) == res.extremum > 1, "returned a does not separate")
    else:
        F = res.value
        check(prevcore.leq(P, F) and all(prevcore.eval_prevision(F, h) <= 1 for h in hs), "box failure witness invalid")


@law("criterion.diamond-grid")
def _dia(t: Trial):
    P = t.prevision("P")
    hs = [random_point(t.rng, t.n, positive=True) for _ in range(t.rng.randint(1, 2))]
    t.note(hs=hs)
    res = transforms.dia_intersection_criterion(P, hs)
    k = len(hs)
    for N in (4, 8):
        if N < k:
            continue
        grid_holds = all(
            prevcore.eval_prevision(P, tuple(sum(b * h[i] for b, h in zip(bs, hs)) for i in range(t.n))) > 1
            for bs in delta_grid(k, N)
        )
        if grid_holds:
            check(isinstance(res, transforms.Holds), f"grid Delta[{N}] holds but the exact criterion fails")
    if isinstance(res, transforms.Holds):
        F = res.value
        check(prevcore.leq(F, P) and all(prevcore.eval_prevision(F, h) > 1 for h in hs), "diamond witness invalid")


@law("orthogonal.double-roundtrip")
def _double(t: Trial):
    fl = t.rng.choice(list(Flavor))
    P = t.prevision("P", fl)
    if t.rng.random() < 0.5:
        x = transforms.nimP(P, fl)
    else:
        x = transforms.qusP(P, fl)
    y = transforms.double_orthogonal_roundtrip(x)
    check(type(y) is type(x) and _eq(y.canonical, x.canonical), "round trip changed the element")


@law("orthogonal.family")
def _family(t: Trial):
    sups = [random_superlinear(t.rng, t.n) for _ in range(t.rng.randint(1, 3))]
    subs = [random_sublinear(t.rng, t.n) for _ in range(t.rng.randint(1, 3))]
    t.note(sups=sups, subs=subs)
    a = transforms.orthogonal_family("superToSub", sups)
    check(_eq(a.canonical, transforms.nimP(prevcore.combine("sup", sups)).canonical), "superToSub disagrees")
    b = transforms.orthogonal_family("subToSuper", subs)
    check(_eq(b.canonical, transforms.qusP(prevcore.combine("inf", subs)).canonical), "subToSuper disagrees")
    # members of A^perp dominate every element of A
    G = transforms.tight_sublinear_witness(a.canonical, ones(t.n))
    check(all(prevcore.leq(F, G) for F in sups), "a member of A^perp is not above some element of A")

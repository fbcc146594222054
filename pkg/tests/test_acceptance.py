"""Acceptance criteria.

Each test prints one PASS/FAIL line with its runtime against the bound; the
lines are also collected for the terminal summary (see conftest.py).  Run
this file directly to get just the table.
"""

import random
import time
from fractions import Fraction as F

import pytest

from prevlab.exactgeo import delta_grid
from prevlab.lawlab import (
    MUTANTS,
    GenParams,
    inject,
    random_prevision,
    reproduce_example,
    run_law_suite,
)
from prevlab.polarity import all_posets, verify_polarity_images
from prevlab.powercone import HoareGen, SmythGen, cone_op
from prevlab.prevcore import (
    DownGen,
    Prevision,
    UpGen,
    classify,
    combine,
    down_generators,
    equal,
    eval_prevision,
    leq,
    linear,
    max_of,
    min_of,
    up_generators,
)
from prevlab.shadow import (
    normalized_sublinear_between,
    shadow_stable,
    shd,
    subnorm_superlinear_below,
)
from prevlab.transforms import (
    CPredSuper,
    Flavor,
    LinearPrev,
    corner_superlinear_witness,
    double_orthogonal_roundtrip,
    flavor_holds,
    minP,
    mix_dominance_range,
    nimP,
    orthogonal_family,
    qusP,
    sandwich,
    supP,
    tight_sublinear_witness,
)

RESULTS = []
H = F(1, 2)
LAM = linear(H, H)
GRID = delta_grid(2, 8)
POSITIVE = [h for h in GRID if all(h)]


def record(number, title, bound, body):
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    in_time = elapsed < bound
    verdict = "PASS" if ok and in_time else "FAIL"
    line = f"{verdict} criterion {number:2d} {title}: {detail} ({elapsed:.2f}s, bound {bound:g}s)"
    if ok and not in_time:
        line += " [over time]"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def population():
    return [random_prevision(seed) for seed in range(200)]


def pointwise_equal(P, Q):
    return all(P(h) == Q(h) for h in GRID) and equal(P, Q)


# -- 1-4: the worked counterexamples --------------------------------------------------------------


def _example_body(example, extra):
    def body():
        verdict = reproduce_example(example)
        more = extra()
        bad = [c.description for c in verdict.checks if not c.passed]
        return verdict.passed and more, f"{len(verdict.checks)} exact checks" + (f", failed {bad}" if bad else "")

    return body


def test_criterion_01_qbox_inf():
    P1, P2 = max_of((1, 0), (H, H)), max_of((0, 1), (H, H))

    def extra():
        inf = combine("inf", [P1, P2])
        return leq(inf, LAM) and leq(LAM, inf) and mix_dominance_range(LAM, P1, P2) is None

    record(1, "qbox-inf", 1, _example_body("qbox-inf", extra))


def test_criterion_02_qbox_plus():
    def extra():
        P1, P2 = max_of((1, 0), (0, 1)), min_of((2, 1), (1, 2))
        return equal(combine("mix", [P1, P2], H), linear(1, 1))

    record(2, "qbox-plus", 1, _example_body("qbox-plus", extra))


def test_criterion_03_hdia_sup():
    def extra():
        return equal(combine("sup", [min_of((1, 0), (H, H)), min_of((0, 1), (H, H))]), LAM)

    record(3, "hdia-sup", 1, _example_body("hdia-sup", extra))


def test_criterion_04_hdia_plus():
    record(4, "hdia-plus", 1, _example_body("hdia-plus", lambda: True))


# -- 5-6: the isomorphism witnesses ----------------------------------------------------------------


def test_criterion_05_first_isomorphism():
    def body():
        done = skipped = 0
        for P in population():
            for h in POSITIVE:
                ph = eval_prevision(P, h)
                if ph == 0:
                    skipped += 1
                    continue
                for fl in Flavor:
                    if not flavor_holds(P, fl):
                        continue
                    Fw = tight_sublinear_witness(P, h, fl)
                    if not (leq(P, Fw) and eval_prevision(Fw, h) == ph and classify(Fw).sublinear and flavor_holds(Fw, fl)):
                        return False, f"witness fails for {P} at {h} ({fl.value})"
                    done += 1
        return True, f"{done} witnesses verified, {skipped} points with P(h) = 0 skipped"

    record(5, "first isomorphism witnesses", 60, body)


def test_criterion_06_second_isomorphism():
    def body():
        done = 0
        for P in population():
            for h in POSITIVE:
                ph = eval_prevision(P, h)
                r = F(15, 16) * ph
                if r == 0:
                    continue
                for fl in Flavor:
                    if not flavor_holds(P, fl):
                        continue
                    Fw = corner_superlinear_witness(P, h, r, fl)
                    if not (leq(Fw, P) and eval_prevision(Fw, h) > r and classify(Fw).superlinear and flavor_holds(Fw, fl)):
                        return False, f"witness fails for {P} at {h} ({fl.value})"
                    done += 1
        return True, f"{done} witnesses verified"

    record(6, "second isomorphism witnesses", 120, body)


# -- 7: sandwich ------------------------------------------------------------------------------------


def test_criterion_07_sandwich():
    def body():
        rng = random.Random(77)
        hits = misses = 0
        for seed in range(200):
            q = random_prevision(seed, GenParams(form="max_of_super", max_branches=1))
            p = random_prevision(seed + 10_000, GenParams(form="min_of_sub", max_branches=1))
            p = combine("scale", [p], F(rng.randint(1, 8), 4))
            qg, pg = UpGen(up_generators(q)), DownGen(down_generators(p))
            dominated = leq(q, p)
            res = sandwich(qg, pg)
            if isinstance(res, LinearPrev):
                W = Prevision(2, res)
                if not (dominated and leq(q, W) and leq(W, p)):
                    return False, f"bad separator for seed {seed}"
                hits += 1
            else:
                h = res.witness
                if dominated or not eval_prevision(q, h) > eval_prevision(p, h):
                    return False, f"bad domination failure for seed {seed}"
                misses += 1
        return True, f"{hits} separated, {misses} refuted"

    record(7, "sandwich iff domination", 30, body)


# -- 8: minP / supP algebra ----------------------------------------------------------------------------


def _hyper_pair(seed, kind):
    form, cls = ("min_of_sub", SmythGen) if kind == "smyth" else ("max_of_super", HoareGen)
    gens = lambda base: tuple(random_prevision(base + k, GenParams(form=form, max_branches=1)) for k in range(1 + (base % 2)))
    return cls(gens(seed * 11)), cls(gens(seed * 11 + 5))


def test_criterion_08_minP_supP_algebra():
    def body():
        for seed in range(100):
            X, Y = _hyper_pair(seed, "smyth")
            a = F(seed % 7, 6)
            mX, mY = minP(X), minP(Y)
            checks = [
                (minP(cone_op("smyth_inf", [X, Y])), combine("inf", [mX, mY])),
                (minP(cone_op("mix", [X, Y], a)), combine("mix", [mX, mY], a)),
                (minP(cone_op("add", [X, Y])), combine("add", [mX, mY])),
                (minP(cone_op("scale", [X], 3)), combine("scale", [mX], 3)),
            ]
            U, V = _hyper_pair(seed, "hoare")
            sU, sV = supP(U), supP(V)
            checks += [
                (supP(cone_op("hoare_sup", [U, V])), combine("sup", [sU, sV])),
                (supP(cone_op("mix", [U, V], a)), combine("mix", [sU, sV], a)),
                (supP(cone_op("add", [U, V])), combine("add", [sU, sV])),
            ]
            for k, (lhs, rhs) in enumerate(checks):
                if not pointwise_equal(lhs, rhs):
                    return False, f"identity {k} fails for seed {seed}"
        return True, "700 identities on 100 Smyth and 100 Hoare pairs"

    record(8, "minP/supP algebra", 60, body)


# -- 9: shadows ------------------------------------------------------------------------------------------


def _subnorm_inputs(seed):
    S = random_prevision(seed, GenParams(form="max_of_super", max_branches=1, flavor="subnorm"))
    Z = random_prevision(seed + 1, GenParams(flavor="subnorm"))
    W = random_prevision(seed + 2, GenParams(form="max_of_super", max_branches=1))
    return combine("sup", [S, Z]), combine("inf", [S, W])


def _norm_inputs(seed):
    top = random_prevision(seed, GenParams(form="min_of_sub", max_branches=1, flavor="norm"))
    X = random_prevision(seed + 1, GenParams(form="min_of_sub", max_branches=1, flavor="subnorm"))
    Q = random_prevision(seed + 2, GenParams(flavor="norm"))
    return combine("inf", [top, Q]), combine("sup", [top, X])


def test_criterion_09_shadow():
    def body():
        for P in population():
            if shadow_stable(P) != classify(P).subnormalized:
                return False, f"criterion disagrees on {P}"
        rng = random.Random(9)
        for _ in range(200):
            a, b = F(rng.randint(0, 16), 16), F(rng.randint(0, 16), 16)
            x0 = tuple(F(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(2))
            x = tuple(F(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(2))
            if shd(x0, b, shd(x0, a, x)) != shd(x0, a * b, x):
                return False, "shd composition fails"
        for seed in range(200):
            P, F0 = _subnorm_inputs(seed * 3)
            Fb = subnorm_superlinear_below(P, F0)
            if not (leq(F0, Fb) and leq(Fb, P) and classify(Fb).subnormalized and classify(Fb).superlinear):
                return False, f"subnorm envelope fails at seed {seed}"
            P, F0 = _norm_inputs(seed * 3)
            Fb = normalized_sublinear_between(P, F0)
            if not (leq(P, Fb) and leq(Fb, F0) and classify(Fb).normalized and classify(Fb).sublinear):
                return False, f"norm envelope fails at seed {seed}"
        return True, "200 criterion checks, 200 compositions, 400 envelopes"

    record(9, "shadow suite", 60, body)


# -- 10: polarity ----------------------------------------------------------------------------------------


def test_criterion_10_polarity():
    def body():
        count = 0
        for size in (1, 2, 3, 4):
            for P in all_posets(size):
                rep = verify_polarity_images(P)
                if not rep.passed:
                    return False, f"poset {P.leq} fails {rep.counterexample}"
                count += 1
        return count == 242, f"{count} labeled posets"

    record(10, "polarity brute force", 300, body)


# -- 11: double orthogonals ------------------------------------------------------------------------------


def _wrapper(seed):
    fl = list(Flavor)[seed % 3]
    form = "min_of_sub" if seed % 2 else "max_of_super"
    if seed % 50 == 0:
        return CPredSuper.whole(2, fl)
    P = random_prevision(seed, GenParams(form=form, max_branches=1, flavor=fl))
    return nimP(P, fl) if form == "min_of_sub" else qusP(P, fl)


def test_criterion_11_double_orthogonal():
    def body():
        for seed in range(200):
            x = _wrapper(seed)
            if double_orthogonal_roundtrip(x) != x:
                return False, f"round trip moved wrapper {seed}"
        for seed in range(50):
            A = [random_prevision(seed * 7 + k, GenParams(form="max_of_super", max_branches=1)) for k in range(2)]
            B = [random_prevision(seed * 7 + 3 + k, GenParams(form="min_of_sub", max_branches=1)) for k in range(2)]
            if not pointwise_equal(orthogonal_family("superToSub", A).canonical, combine("sup", A)):
                return False, f"superToSub disagrees at seed {seed}"
            if not pointwise_equal(orthogonal_family("subToSuper", B).canonical, combine("inf", B)):
                return False, f"subToSuper disagrees at seed {seed}"
        return True, "200 round trips, 100 family identities"

    record(11, "double orthogonals", 30, body)


# -- 12: mutation sensitivity ------------------------------------------------------------------------------


def test_criterion_12_mutants():
    def body():
        caught = {}
        for name in MUTANTS:
            with inject(name):
                reports = run_law_suite(42, 10, 2)
            caught[name] = sorted(r.name for r in reports if not r.ok)
        ok = all(caught.values())
        return ok, "; ".join(f"{m} caught by {', '.join(v) or 'nothing'}" for m, v in caught.items())

    record(12, "mutation sensitivity", 120, body)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))

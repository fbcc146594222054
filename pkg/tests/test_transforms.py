from fractions import Fraction as F

import pytest

from prevlab.exactgeo import delta_grid, simplex_grid
from prevlab.lawlab import GenParams, random_prevision
from prevlab.powercone import HoareGen, SmythGen
from prevlab.prevcore import (
    DownGen,
    LinearPrev,
    UpGen,
    classify,
    equal,
    eval_prevision,
    gauge,
    leq,
    linear,
    max_of,
    min_of,
)
from prevlab.transforms import (
    CPredSuper,
    DominationFailure,
    Fails,
    Flavor,
    FlavorError,
    Holds,
    Interval,
    box_union_criterion,
    corner_superlinear_report,
    corner_superlinear_witness,
    dia_intersection_criterion,
    double_orthogonal_roundtrip,
    member_nim,
    member_qus,
    minP,
    mix_dominance_range,
    nimP,
    orthogonal_family,
    qusP,
    sandwich,
    supP,
    tight_sublinear_witness,
)

H = F(1, 2)
LAM = linear(H, H)
MAX01 = max_of((1, 0), (0, 1))
MIN01 = min_of((1, 0), (0, 1))
P1_BOX = max_of((1, 0), (H, H))
P2_BOX = max_of((0, 1), (H, H))
P1_DIA = min_of((1, 0), (H, H))
P2_DIA = min_of((0, 1), (H, H))


# -- minP / supP ------------------------------------------------------------------------------


def test_minP_of_box_pair_is_lambda():
    assert equal(minP(SmythGen((P1_BOX, P2_BOX))), LAM)


def test_supP_of_diamond_pair_is_lambda():
    assert equal(supP(HoareGen((P1_DIA, P2_DIA))), LAM)


# -- wrappers and membership ----------------------------------------------------------------------


def test_member_nim_examples():
    assert member_nim(nimP(LAM), P1_BOX)
    assert not member_nim(nimP(LAM), MIN01)


def test_member_qus_examples():
    assert member_qus(qusP(LAM), P2_DIA)
    assert member_qus(qusP(MAX01), linear(1, 0))
    assert not member_qus(qusP(LAM), P1_BOX)


def test_flavored_wrappers_reject_unflavored_previsions():
    with pytest.raises(FlavorError):
        nimP(linear(1, 1), Flavor.SUBNORM)
    with pytest.raises(FlavorError):
        qusP(linear(H, 0), "norm")
    assert not member_nim(nimP(LAM, "norm"), linear(1, 1))


def test_top_wrapper_contains_every_superlinear_prevision():
    top = CPredSuper.whole(2)
    assert member_qus(top, min_of((5, 0), (0, 7)))
    assert not member_qus(top, MAX01)


# -- sandwich -------------------------------------------------------------------------------------


def test_sandwich_examples():
    w = sandwich(UpGen([(1, 0), (0, 1)]), DownGen([(1, 0), (0, 1)]))
    assert isinstance(w, LinearPrev)
    # independent oracle: the valid w are exactly the segment between the unit vectors
    assert sum(w.weights) == 1 and all(c >= 0 for c in w.weights)
    assert sandwich(UpGen([(H, H)]), DownGen([(H, H)])) == LinearPrev((H, H))
    assert sandwich(UpGen([(1, 1)]), DownGen([(1, 0), (0, 1)])) == DominationFailure((F(1), F(1)))


def test_sandwich_flavors():
    w = sandwich(UpGen([(1, 0), (0, 1)]), DownGen([(1, 0), (0, 1)]), Flavor.NORM)
    assert sum(w.weights) == 1
    with pytest.raises(FlavorError):
        sandwich(UpGen([(2, 2)]), DownGen([(3, 3)]), Flavor.SUBNORM)


# -- orthogonal families ----------------------------------------------------------------------------


def test_orthogonal_family_examples():
    assert equal(orthogonal_family("superToSub", [P1_DIA, P2_DIA]).canonical, LAM)
    assert equal(orthogonal_family("subToSuper", [P1_BOX, P2_BOX]).canonical, LAM)
    top = orthogonal_family("subToSuper", [], n=2)
    assert top.top
    with pytest.raises(ValueError):
        orthogonal_family("subToSuper", [])
    with pytest.raises(ValueError):
        orthogonal_family("sideways", [LAM])


def test_double_orthogonal_examples():
    assert double_orthogonal_roundtrip(nimP(LAM)) == nimP(LAM)
    assert double_orthogonal_roundtrip(qusP(MAX01)) == qusP(MAX01)
    top = CPredSuper.whole(2)
    assert double_orthogonal_roundtrip(top) == top
    with pytest.raises(TypeError):
        double_orthogonal_roundtrip(LAM)


# -- witnesses ----------------------------------------------------------------------------------------


def test_tight_witness_examples():
    Fw = tight_sublinear_witness(LAM, (1, 1))
    assert equal(Fw, MAX01)
    P = min_of((1, 1), (3, 0))
    Fw = tight_sublinear_witness(P, (1, 1))
    assert equal(Fw, max_of((2, 0), (0, 2)))
    assert eval_prevision(Fw, (1, 1)) == 2 and leq(P, Fw)
    with pytest.raises(ValueError):
        tight_sublinear_witness(LAM, (1, 0))


def test_corner_witness_examples():
    rep = corner_superlinear_report(LAM, (1, 1), F(3, 4))
    assert rep.delta == F(1, 8)
    assert equal(rep.witness, min_of((F(6, 7), 0), (0, F(6, 7))))
    assert eval_prevision(rep.witness, (1, 1)) == F(6, 7)
    with pytest.raises(ValueError):
        corner_superlinear_witness(LAM, (1, 1), 1)
    Fn = corner_superlinear_witness(LAM, (1, 1), F(3, 4), Flavor.NORM)
    assert classify(Fn).normalized and classify(Fn).superlinear
    assert leq(Fn, LAM) and eval_prevision(Fn, (1, 1)) > F(3, 4)


def test_witnesses_on_random_previsions():
    hs = [h for h in delta_grid(2, 8) if all(h)]
    for s in range(25):
        P = random_prevision(s)
        for h in hs[::5]:
            ph = eval_prevision(P, h)
            if ph == 0:
                continue
            Ft = tight_sublinear_witness(P, h)
            assert classify(Ft).sublinear and leq(P, Ft) and eval_prevision(Ft, h) == ph
            Fc = corner_superlinear_witness(P, h, F(15, 16) * ph)
            assert classify(Fc).superlinear and leq(Fc, P) and eval_prevision(Fc, h) > F(15, 16) * ph


def test_corner_witness_fallback_is_flagged():
    # a normalized P whose two-ray gauge overshoots at 1 needs the shadow pass
    counts = {True: 0, False: 0}
    for s in range(30):
        P = random_prevision(s, GenParams(flavor="norm"))
        rep = corner_superlinear_report(P, (1, 2), F(15, 16) * eval_prevision(P, (1, 2)), Flavor.NORM)
        counts[rep.used_fallback] += 1
        assert classify(rep.witness).normalized
    assert counts[False] > 0


# -- box and diamond criteria -------------------------------------------------------------------------


def test_box_examples():
    res = box_union_criterion(LAM, [(3, 0), (0, 3)])
    assert isinstance(res, Holds) and res.extremum == F(3, 2)
    # the whole simplex is optimal; ties break to the lexicographically least point
    assert res.value == (F(0), F(1))
    res = box_union_criterion(LAM, [(1, 0)])
    assert isinstance(res, Fails)
    G = res.value
    assert G == gauge([(1, 0)], "down")
    assert eval_prevision(G, (1, 0)) == 1 and leq(LAM, G)
    res = box_union_criterion(LAM, [(4, 0)])
    assert isinstance(res, Holds) and res.value == (F(1),)


def test_diamond_examples():
    res = dia_intersection_criterion(LAM, [(3, 1), (1, 3)])
    assert isinstance(res, Holds) and res.extremum == 2
    assert all(eval_prevision(res.value, h) > 1 for h in [(3, 1), (1, 3)]) and leq(res.value, LAM)
    res = dia_intersection_criterion(LAM, [(1, 1)])
    assert isinstance(res, Fails) and res.value == (F(1),)
    res = dia_intersection_criterion(linear(F(3, 2), F(3, 2)), [(1, 1)])
    assert isinstance(res, Holds)
    with pytest.raises(ValueError):
        dia_intersection_criterion(LAM, [(1, 0)])


def test_box_criterion_matches_grid_search():
    for s in range(20):
        P = random_prevision(s)
        hs = [(F(s % 3 + 1), F(0)), (F(0), F(s % 4 + 1)), (F(1), F(1))]
        res = box_union_criterion(P, hs)
        grid_best = max(eval_prevision(P, tuple(sum(a[j] * hs[j][i] for j in range(3)) for i in range(2))) for a in simplex_grid(3, 12))
        assert res.extremum >= grid_best
        assert isinstance(res, Holds) == (res.extremum > 1)


# -- mixtures ---------------------------------------------------------------------------------------------


def test_mix_dominance_examples():
    assert mix_dominance_range(LAM, P1_BOX, P2_BOX) is None
    got = mix_dominance_range(linear(1, 1), MAX01, min_of((2, 1), (1, 2)))
    assert got == Interval(H, F(1)) and str(got) == "[1/2, 1]"
    P = random_prevision(3)
    assert mix_dominance_range(P, P, P) == Interval(F(0), F(1))


def test_mix_dominance_matches_grid():
    grid = delta_grid(2, 8)
    weights = [F(k, 16) for k in range(17)]
    for s in range(15):
        T, A, B = (random_prevision(s * 3 + k) for k in range(3))
        got = mix_dominance_range(T, A, B)
        for a in weights:
            ok = all(T(h) >= a * A(h) + (1 - a) * B(h) for h in grid)
            inside = got is not None and got.lo <= a <= got.hi
            if inside:
                assert ok


def test_everywhere_infinite_gauge_is_an_unflavored_member():
    G = gauge([(0, 0)], "down")
    assert eval_prevision(G, (0, 0)) == 0
    assert member_nim(nimP(linear(1, 1)), G)
    assert not member_nim(nimP(LAM, Flavor.SUBNORM), G)

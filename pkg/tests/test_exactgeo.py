import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prevlab.exactgeo import (
    INF,
    DimensionError,
    ExactModeBoundError,
    Infeasible,
    LinExpr,
    Negative,
    Nonneg,
    Optimal,
    Unbounded,
    constraint,
    delta_grid,
    emax,
    emin,
    evaluate,
    expression_cells,
    fmt_point,
    fmt_rat,
    lin,
    lp_solve,
    parse_point,
    point,
    rat,
    simplex_extremum,
    simplex_grid,
    verify_nonneg_ph_pl,
)

H = F(1, 2)


# -- rationals -------------------------------------------------------------------------


def test_rat_accepts_exact_inputs():
    assert rat("3/6") == H
    assert rat(2) == F(2)
    assert rat(F(1, 3)) == F(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, None])
def test_rat_rejects_inexact_inputs(bad):
    with pytest.raises(TypeError):
        rat(bad)


def test_points_are_nonnegative_and_nonempty():
    with pytest.raises(ValueError):
        point(["-1", "0"])
    with pytest.raises(DimensionError):
        point([])


def test_point_text_round_trip():
    p = parse_point("1, 1/2,0")
    assert p == (F(1), H, F(0))
    assert fmt_point(p) == "(1,1/2,0)"
    assert fmt_rat(INF) == "inf"
    with pytest.raises(ValueError):
        parse_point("1,,2")


# -- linear programming -------------------------------------------------------------------


def test_lp_single_bound():
    res = lp_solve("max", LinExpr((F(1),)), [constraint([1], "<=", 3), constraint([1], ">=", 0)])
    assert res == Optimal(F(3), (F(3),))


def test_lp_empty_polytope_has_farkas_certificate():
    cons = [constraint([1], "<=", -1), constraint([1], ">=", 0)]
    res = lp_solve("max", LinExpr((F(1),)), cons)
    assert isinstance(res, Infeasible)
    u = res.multipliers
    # sum u_i (a_i x + c_i) = const < 0 with signs matching the relations
    assert sum(ui * c.expr.coeffs[0] for ui, c in zip(u, cons)) == 0
    assert sum(ui * c.expr.const for ui, c in zip(u, cons)) < 0
    for ui, c in zip(u, cons):
        assert (ui <= 0) if c.rel == "<=" else (ui >= 0)


def test_lp_qbox_plus_bound():
    # a t + b (1 - t) >= min(1 + t, 2 - t) at t in {0, 1/2, 1}, a, b >= 0
    cons = [constraint((t, 1 - t), ">=", min(1 + t, 2 - t)) for t in (F(0), H, F(1))]
    cons += [constraint((1, 0), ">=", 0), constraint((0, 1), ">=", 0)]
    res = lp_solve("min", LinExpr((F(1), F(1))), cons)
    assert isinstance(res, Optimal) and res.value == 3
    # the optimal face is the segment a + b = 3 between (1, 2) and (2, 1); the
    # lexicographic tie-break picks its smallest point
    assert res.witness == (F(1), F(2))
    assert all(c.holds(res.witness) for c in cons)


def test_lp_unbounded_reports_ray():
    res = lp_solve("max", LinExpr((F(1), F(0))), [constraint((1, -1), "<=", 1), constraint((0, 1), ">=", 0)])
    assert isinstance(res, Unbounded)
    d = res.ray
    assert d[0] > 0
    assert d[0] - d[1] <= 0 and d[1] >= 0


def test_lp_dimension_mismatch():
    with pytest.raises(DimensionError):
        lp_solve("max", LinExpr((F(1),)), [constraint((1, 1), "<=", 1)])


def _random_lp(rng):
    cons = [constraint((rng.randint(-3, 3), rng.randint(-3, 3)), rng.choice(["<=", ">="]), rng.randint(-4, 6)) for _ in range(3)]
    cons += [constraint((1, 0), ">=", 0), constraint((0, 1), ">=", 0), constraint((1, 0), "<=", 4), constraint((0, 1), "<=", 4)]
    obj = LinExpr((F(rng.randint(-3, 3)), F(rng.randint(-3, 3))))
    return obj, cons


@pytest.mark.parametrize("seed", range(60))
def test_lp_matches_grid_oracle(seed):
    rng = random.Random(seed)
    obj, cons = _random_lp(rng)
    sense = rng.choice(["max", "min"])
    res = lp_solve(sense, obj, cons)
    grid = [(F(i, 4), F(j, 4)) for i in range(17) for j in range(17)]
    feasible = [p for p in grid if all(c.holds(p) for c in cons)]
    if isinstance(res, Infeasible):
        assert not feasible
        return
    assert isinstance(res, Optimal)
    assert all(c.holds(res.witness) for c in cons)
    assert obj(res.witness) == res.value
    for p in feasible:
        assert (obj(p) <= res.value) if sense == "max" else (obj(p) >= res.value)


# -- delta grids ----------------------------------------------------------------------------


def test_delta_grid_small_cases():
    assert delta_grid(1, 1) == [(F(1),)]
    assert delta_grid(1, 2) == [(F(1),)]
    pts = delta_grid(2, 3)
    t = F(1, 3)
    assert set(pts) == {(0, 2 * t), (t, t), (2 * t, 0), (0, F(1)), (t, 2 * t), (2 * t, t), (F(1), 0)}
    assert pts == sorted(pts)


def test_delta_grid_rejects_coarse_denominators():
    with pytest.raises(ValueError):
        delta_grid(3, 2)


@pytest.mark.parametrize("n,N", [(n, N) for n in (1, 2, 3) for N in range(n, 9)])
def test_delta_grid_matches_brute_force(n, N):
    pts = delta_grid(n, N)
    brute = [tuple(F(k, N) for k in ks) for ks in product(range(N + 1), repeat=n) if 1 - F(n, N) < F(sum(ks), N) <= 1]
    assert pts == brute
    for p in pts:
        assert all((c * N).denominator == 1 for c in p)


def test_simplex_grid_counts():
    assert len(simplex_grid(2, 4)) == 5
    assert len(simplex_grid(3, 4)) == 15
    assert all(sum(p) == 1 for p in simplex_grid(3, 5))


# -- sign certification ------------------------------------------------------------------------


def test_certify_upper_prevision_above_average():
    x0, avg = lin(1, 0), lin(H, H)
    assert isinstance(verify_nonneg_ph_pl(emax(x0, avg) - avg), Nonneg)


def test_certify_reports_minimal_witness():
    x0, avg = lin(1, 0), lin(H, H)
    assert verify_nonneg_ph_pl(avg - emax(x0, avg)) == Negative((F(1), F(0)), -H)


def test_certify_zero():
    assert isinstance(verify_nonneg_ph_pl(lin(0, 0)), Nonneg)


def test_exact_mode_dimension_bound():
    f = lin(1, 1, 1, 1)
    with pytest.raises(ExactModeBoundError):
        verify_nonneg_ph_pl(f)
    assert verify_nonneg_ph_pl(f, mode="grid") == Nonneg(certified=False)
    assert isinstance(verify_nonneg_ph_pl(lin(1, -1, 0, 0), mode="grid"), Negative)


def _random_expr(rng, m, depth=2):
    if depth == 0 or rng.random() < 0.3:
        return lin(*[F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(m)])
    kids = [_random_expr(rng, m, depth - 1) for _ in range(rng.randint(2, 3))]
    kind = rng.random()
    if kind < 0.35:
        return emin(*kids)
    if kind < 0.7:
        return emax(*kids)
    return kids[0] - kids[1]


def test_certify_agrees_with_dense_grid_in_dimension_two():
    rng = random.Random(2024)
    grid = simplex_grid(2, 64)
    for _ in range(500):
        f = _random_expr(rng, 2)
        verdict = verify_nonneg_ph_pl(f)
        if isinstance(verdict, Nonneg):
            assert all(evaluate(f, p) >= 0 for p in grid)
        else:
            assert evaluate(f, verdict.witness) == verdict.value < 0


def test_certify_agrees_with_grid_in_dimension_three():
    rng = random.Random(7)
    grid = simplex_grid(3, 16)
    for _ in range(80):
        f = _random_expr(rng, 3)
        verdict = verify_nonneg_ph_pl(f)
        if isinstance(verdict, Nonneg):
            assert all(evaluate(f, p) >= 0 for p in grid)
        else:
            assert evaluate(f, verdict.witness) == verdict.value < 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), min_size=2, max_size=4))
def test_cells_are_linear_pieces(forms):
    # on every cell of the arrangement, a min of linear forms is linear: its
    # value at the sample equals the barycentric interpolation of corner values
    # whenever the sample is a convex combination of those corners
    f = emin(*[lin(*k) for k in forms])
    for cell in expression_cells(f):
        vals = [evaluate(f, v) for v in cell.vertices]
        assert min(vals) <= evaluate(f, cell.sample) <= max(vals)


def test_simplex_extremum_ties_break_lexicographically():
    value, at = simplex_extremum(lin(1, 1), "max")
    assert value == 1 and at == (F(0), F(1))
    value, at = simplex_extremum(emin(lin(H, F(1, 4)), lin(F(1, 4), H)), "max")
    assert value == F(3, 8) and at == (H, H)

import json

import pytest

from prevlab.cli.documents import dump_prevision
from prevlab.lawlab import (
    EXAMPLES,
    MUTANTS,
    REGISTRY,
    GenParams,
    UnknownExample,
    inject,
    random_prevision,
    reproduce_example,
    run_law_suite,
    suite_passed,
)
from prevlab.prevcore import classify


def test_random_prevision_is_deterministic():
    p = GenParams(n=3, max_branches=2, max_gens=3, max_denominator=6)
    assert dump_prevision(random_prevision(9, p)) == dump_prevision(random_prevision(9, p))
    assert dump_prevision(random_prevision(9, p)) != dump_prevision(random_prevision(10, p))


@pytest.mark.parametrize("flavor", ["subnorm", "norm"])
def test_random_prevision_honours_flavor(flavor):
    for s in range(30):
        flags = classify(random_prevision(s, GenParams(flavor=flavor)))
        assert flags.normalized if flavor == "norm" else flags.subnormalized


def test_random_population_is_mixed():
    flags = [classify(random_prevision(s)) for s in range(100)]
    assert any(f.sublinear for f in flags) and any(not f.sublinear for f in flags)
    assert any(f.superlinear for f in flags) and any(not f.superlinear for f in flags)


def test_suite_with_zero_trials_is_empty():
    assert run_law_suite(42, 0, 2) == []


def test_suite_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_law_suite(1, 3, 0)
    with pytest.raises(KeyError):
        run_law_suite(1, 3, 2, laws=["no-such-law"])


def test_suite_is_deterministic_and_passes():
    laws = ["prevcore.homogeneity", "shadow.composition", "minP.retraction", "iso.first"]
    a = run_law_suite(7, 5, 2, laws)
    b = run_law_suite(7, 5, 2, laws)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    assert suite_passed(a)
    assert json.dumps([r.to_json() for r in a], sort_keys=True)


def test_laws_skip_dimensions_above_their_bound():
    names = {r.name for r in run_law_suite(1, 1, 3, ["shadow.criterion", "prevcore.choquet"])}
    assert names == {"prevcore.choquet"}


def test_registry_covers_every_module():
    prefixes = {name.split(".")[0] for name in REGISTRY}
    assert {"prevcore", "shadow", "minP", "supP", "powercone", "iso", "sandwich", "criterion", "orthogonal"} <= prefixes


@pytest.mark.parametrize(
    "mutant,law",
    [
        ("minP-max", "minP.retraction"),
        ("drop-shadow-closure", "iso.first"),
        ("drop-ones-ray", "iso.second-norm"),
    ],
)
def test_mutants_are_caught(mutant, law):
    assert mutant in MUTANTS
    with inject(mutant):
        reports = run_law_suite(42, 10, 2, [law])
    assert not suite_passed(reports)
    fail = reports[0].failures[0]
    assert fail.inputs and fail.message
    # the patch is removed afterwards
    assert suite_passed(run_law_suite(42, 10, 2, [law]))


def test_unknown_mutant():
    with pytest.raises(KeyError):
        with inject("nope"):
            pass


@pytest.mark.parametrize("example", sorted(EXAMPLES))
def test_examples_pass(example):
    verdict = reproduce_example(example)
    assert verdict.passed, [c for c in verdict.checks if not c.passed]
    assert verdict.to_json()["example"] == example


def test_qbox_inf_checks():
    checks = {c.description: c.computed for c in reproduce_example("qbox-inf").checks}
    assert checks["inf(P1,P2) <= Lambda"] == checks["Lambda <= inf(P1,P2)"] == "True"
    assert checks["{a : Lambda >= a P1 + (1-a) P2}"] == "empty"


def test_hdia_plus_lp_value():
    checks = {c.description: c.computed for c in reproduce_example("hdia-plus").checks}
    assert checks["max a+b over linear <= P1"] == "1"


def test_unknown_example():
    with pytest.raises(UnknownExample):
        reproduce_example("bogus")

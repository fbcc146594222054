"""Exact reproductions of the four two-point counterexamples.

Each example reduces a statement about infinite sets of previsions to a
finite battery: pointwise equalities certified by the arrangement code,
small LPs over the weights (a, b) of a linear prevision on {0, 1}, and
one-dimensional extremum computations.  Throughout, h_t denotes the
function (t, 1 - t).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from ..exactgeo import LinExpr, Optimal, constraint, emin, lin, lp_solve, simplex_extremum
from ..prevcore import Order, Prevision, classify, combine, compare, eval_prevision, leq, linear, max_of, min_of
from ..transforms import member_nim, mix_dominance_range, nimP

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Check:
    description: str
    expected: str
    computed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class ExampleVerdict:
    example: str
    checks: Tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "example": self.example,
            "pass": self.passed,
            "checks": [
                {"description": c.description, "expected": c.expected, "computed": c.computed, "pass": c.passed}
                for c in self.checks
            ],
        }


class UnknownExample(KeyError):
    pass


def h(t: Fraction) -> Tuple[Fraction, Fraction]:
    return (t, 1 - t)


def _lp_value(res) -> str:
    if isinstance(res, Optimal):
        return str(res.value)
    return type(res).__name__


def _linear_rows(P: Prevision, ts, rel: str, budget=None):
    """a t + b (1 - t) rel P(h_t), one row per probe t; with a budget,
    a t + b (1 - t) rel budget - P(h_t) instead."""
    if budget is None:
        return [constraint((t, 1 - t), rel, eval_prevision(P, h(t))) for t in ts]
    return [constraint((t, 1 - t), rel, budget - eval_prevision(P, h(t))) for t in ts]


def _nonneg(k: int):
    return [constraint(tuple(Fraction(int(i == j)) for j in range(k)), ">=", 0) for i in range(k)]


def _qbox_inf() -> List[Check]:
    lam = linear(HALF, HALF)
    p1 = max_of((1, 0), (HALF, HALF))
    p2 = max_of((0, 1), (HALF, HALF))
    inf = combine("inf", [p1, p2])
    f1, f2 = classify(p1), classify(p2)
    rng = mix_dominance_range(lam, p1, p2)
    return [
        Check("P1 normalized sublinear", "True", str(f1.sublinear and f1.normalized)),
        Check("P2 normalized sublinear", "True", str(f2.sublinear and f2.normalized)),
        Check("inf(P1,P2) <= Lambda", "True", str(leq(inf, lam))),
        Check("Lambda <= inf(P1,P2)", "True", str(leq(lam, inf))),
        Check("{a : Lambda >= a P1 + (1-a) P2}", "empty", "empty" if rng is None else str(rng)),
    ]


def _qbox_plus() -> List[Check]:
    lam = linear(1, 1)
    p1 = max_of((1, 0), (0, 1))
    p2 = min_of((2, 1), (1, 2))
    mix = combine("mix", [p1, p2], HALF)
    probes = (Fraction(0), HALF, Fraction(1))
    # linear Lambda2 >= P2 on the segment: P2 restricted to h_t breaks only at t = 1/2
    low = lp_solve("min", LinExpr((Fraction(1), Fraction(1))), _linear_rows(p2, probes, ">=") + _nonneg(2))
    # P1 + Lambda2 <= 2 on the segment
    up = lp_solve("max", LinExpr((Fraction(1), Fraction(1))), _linear_rows(p1, probes, "<=", budget=Fraction(2)) + _nonneg(2))
    # t = 0 and t = 1 probes of (1/2) P1 + (1/2) F2 <= Lambda give b <= 1 and a <= 1
    system = [
        constraint((1, 0), "<=", 1),
        constraint((0, 1), "<=", 1),
        constraint((1, 1), ">=", 3),
    ]
    sysres = lp_solve("max", LinExpr((Fraction(0), Fraction(0))), system)
    return [
        Check("P1 sublinear", "True", str(classify(p1).sublinear)),
        Check("P2 superlinear", "True", str(classify(p2).superlinear)),
        Check("P1 +_1/2 P2 = Lambda", "EQ", compare(mix, lam).name if isinstance(compare(mix, lam), Order) else "incomparable"),
        Check("min a+b over linear >= P2", "3", _lp_value(low)),
        Check("max a+b under P1 + linear <= 2", "2", _lp_value(up)),
        Check("Lambda in nimP(P1 +_1/2 P2)", "True", str(member_nim(nimP(mix), lam))),
        Check("a <= 1, b <= 1, a+b >= 3", "Infeasible", _lp_value(sysres)),
    ]


def _hdia_sup() -> List[Check]:
    lam = linear(HALF, HALF)
    p1 = min_of((1, 0), (HALF, HALF))
    p2 = min_of((0, 1), (HALF, HALF))
    sup = combine("sup", [p1, p2])
    eps, r = Fraction(1, 4), Fraction(3, 8)
    hi, lo = HALF + eps, HALF - eps
    # a -> min over the two probes of a P1 + (1-a) P2, on the 1-simplex (a, 1-a)
    f = emin(
        lin(eval_prevision(p1, h(hi)), eval_prevision(p2, h(hi))),
        lin(eval_prevision(p1, h(lo)), eval_prevision(p2, h(lo))),
    )
    best, at = simplex_extremum(f, "max")
    f1, f2 = classify(p1), classify(p2)
    return [
        Check("P1 normalized superlinear", "True", str(f1.superlinear and f1.normalized)),
        Check("P2 normalized superlinear", "True", str(f2.superlinear and f2.normalized)),
        Check("sup(P1,P2) = Lambda", "EQ", compare(sup, lam).name if isinstance(compare(sup, lam), Order) else "incomparable"),
        Check("max_a min of the two probe values", str(HALF - eps / 2), str(best)),
        Check("maximizing a", str(HALF), str(at[0])),
        Check("probe maximum > r = 3/8", "False", str(best > r)),
    ]


def _hdia_plus() -> List[Check]:
    lam = linear(1, 1)
    p1 = max_of((1, 0), (0, 1))
    p2 = min_of((2, 1), (1, 2))
    eps = Fraction(1, 8)
    probes = (Fraction(0), HALF, Fraction(1))
    target = LinExpr((Fraction(1), Fraction(1)))
    rows = _linear_rows(p1, probes, "<=") + _nonneg(2)
    best = lp_solve("max", target, rows)
    need = 2 - 4 * eps
    forced = lp_solve("max", target, rows + [constraint((1, 1), ">=", need)])
    mix = combine("mix", [p1, p2], HALF)
    value = best.value if isinstance(best, Optimal) else None
    return [
        Check("P1 +_1/2 P2 = Lambda", "EQ", compare(mix, lam).name if isinstance(compare(mix, lam), Order) else "incomparable"),
        Check("P2(h_0), P2(h_1)", "1, 1", f"{eval_prevision(p2, h(Fraction(0)))}, {eval_prevision(p2, h(Fraction(1)))}"),
        Check("max a+b over linear <= P1", "1", _lp_value(best)),
        Check("bound 2 - 4 eps at eps = 1/8", "3/2", str(need)),
        Check("max a+b < 2 - 4 eps", "True", str(value is not None and value < need)),
        Check("linear <= P1 with a+b >= 3/2", "Infeasible", _lp_value(forced)),
    ]


EXAMPLES: Dict[str, Callable[[], List[Check]]] = {
    "qbox-inf": _qbox_inf,
    "qbox-plus": _qbox_plus,
    "hdia-sup": _hdia_sup,
    "hdia-plus": _hdia_plus,
}


def reproduce_example(example_id: str) -> ExampleVerdict:
    if example_id not in EXAMPLES:
        raise UnknownExample(f"unknown example {example_id!r}; known: {', '.join(EXAMPLES)}")
    return ExampleVerdict(example_id, tuple(EXAMPLES[example_id]()))

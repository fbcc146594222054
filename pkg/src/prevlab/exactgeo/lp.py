"""Exact linear programming: two-phase tableau simplex with Bland's rule.

Variables are free (unrestricted in sign); write `x >= 0` explicitly when
you want it.  Results carry certificates:

* Optimal: the value and a witness; by default the witness is the
  lexicographically smallest optimal point (when that exists).
* Infeasible: Farkas multipliers u, one per constraint, with
  sum_k u_k * coeffs_k = 0, u_k <= 0 on "<=" rows, u_k >= 0 on ">=" rows,
  and sum_k u_k * const_k < 0.  Summing u_k * (row_k(x)) over a feasible x
  would give something both >= 0 and < 0.
* Unbounded: a feasible point and an improving ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .rational import DimensionError, RatLike, rat

RELATIONS = ("<=", "==", ">=")
ZERO = Fraction(0)


@dataclass(frozen=True)
class LinExpr:
    """coeffs . x + const"""

    coeffs: Tuple[Fraction, ...]
    const: Fraction = ZERO

    @staticmethod
    def of(coeffs: Sequence[RatLike], const: RatLike = 0) -> "LinExpr":
        return LinExpr(tuple(rat(c) for c in coeffs), rat(const))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        if len(x) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(x)}")
        return sum((c * v for c, v in zip(self.coeffs, x)), self.const)


@dataclass(frozen=True)
class Constraint:
    """expr REL 0"""

    expr: LinExpr
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.expr(x)
        return v <= 0 if self.rel == "<=" else v >= 0 if self.rel == ">=" else v == 0


def constraint(coeffs: Sequence[RatLike], rel: str, bound: RatLike) -> Constraint:
    """coeffs . x REL bound"""
    return Constraint(LinExpr.of(coeffs, -rat(bound)), rel)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    witness: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    multipliers: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    witness: Tuple[Fraction, ...]
    ray: Tuple[Fraction, ...]


LPResult = Union[Optimal, Infeasible, Unbounded]


class _Tableau:
    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows  # each row: coefficients followed by the rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        pr = rows[r]
        for i, row in enumerate(rows):
            if i != r:
                f = row[c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(row, pr)]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction], allowed: Sequence[int]):
        cb = [cost[b] for b in self.basis]
        out = {}
        for j in allowed:
            out[j] = cost[j] - sum((c * row[j] for c, row in zip(cb, self.rows) if c), ZERO)
        return out

    def run(self, cost: Sequence[Fraction], allowed: Sequence[int]) -> Optional[int]:
        """Minimise cost . x.  Returns None at optimum, or the entering column
        of an unbounded edge."""
        allowed = sorted(allowed)
        while True:
            basic = set(self.basis)
            rc = self.reduced_costs(cost, [j for j in allowed if j not in basic])
            entering = next((j for j in sorted(rc) if rc[j] < 0), None)
            if entering is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    def value_of(self, ncols: int) -> List[Fraction]:
        x = [ZERO] * ncols
        for i, b in enumerate(self.basis):
            x[b] = self.rows[i][-1]
        return x


def _check_dims(objective: LinExpr, constraints: Sequence[Constraint]) -> int:
    n = objective.dim
    for c in constraints:
        if c.expr.dim != n:
            raise DimensionError(f"constraint has dimension {c.expr.dim}, objective has {n}")
    return n


def _solve(direction: str, objective: LinExpr, constraints: Sequence[Constraint]) -> LPResult:
    n = _check_dims(objective, constraints)
    m = len(constraints)
    n_slack = sum(1 for c in constraints if c.rel != "==")
    # columns: p (n), q (n), slacks, artificials (m); x = p - q
    ncols = 2 * n + n_slack + m
    rows: List[List[Fraction]] = []
    signs: List[int] = []
    slack_col = 2 * n
    for k, c in enumerate(constraints):
        row = [ZERO] * (ncols + 1)
        for j, a in enumerate(c.expr.coeffs):
            row[j] = a
            row[n + j] = -a
        if c.rel != "==":
            row[slack_col] = Fraction(1) if c.rel == "<=" else Fraction(-1)
            slack_col += 1
        row[-1] = -c.expr.const
        sign = 1
        if row[-1] < 0:
            row = [-x for x in row]
            sign = -1
        row[2 * n + n_slack + k] = Fraction(1)
        rows.append(row)
        signs.append(sign)
    art0 = 2 * n + n_slack
    tab = _Tableau(rows, [art0 + k for k in range(m)])

    phase1 = [ZERO] * art0 + [Fraction(1)] * m
    tab.run(phase1, range(ncols))
    infeas = sum((tab.rows[i][-1] for i, b in enumerate(tab.basis) if b >= art0), ZERO)
    if infeas > 0:
        cb = [phase1[b] for b in tab.basis]
        y = [sum((c * row[art0 + k] for c, row in zip(cb, tab.rows)), ZERO) for k in range(m)]
        return Infeasible(tuple(signs[k] * y[k] for k in range(m)))

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= art0:
            col = next((j for j in range(art0) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    sgn = Fraction(1) if direction == "min" else Fraction(-1)
    cost = [sgn * a for a in objective.coeffs] + [-sgn * a for a in objective.coeffs]
    cost += [ZERO] * (ncols - 2 * n)
    entering = tab.run(cost, range(art0))
    vals = tab.value_of(ncols)
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    if entering is not None:
        d = [ZERO] * ncols
        d[entering] = Fraction(1)
        for r, b in enumerate(tab.basis):
            d[b] = -tab.rows[r][entering]
        ray = tuple(d[j] - d[n + j] for j in range(n))
        return Unbounded(x, ray)
    return Optimal(objective(x), x)


def lp_solve(
    direction: str,
    objective: LinExpr,
    constraints: Sequence[Constraint],
    *,
    lexicographic: bool = True,
) -> LPResult:
    """Optimise `objective` in `direction` ("max" or "min") over the constraints."""
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', not {direction!r}")
    res = _solve(direction, objective, constraints)
    if not isinstance(res, Optimal) or not lexicographic:
        return res
    n = objective.dim
    fixed = list(constraints) + [Constraint(LinExpr(objective.coeffs, objective.const - res.value), "==")]
    witness = res.witness
    for i in range(n):
        e = LinExpr(tuple(Fraction(int(k == i)) for k in range(n)))
        sub = _solve("min", e, fixed)
        if not isinstance(sub, Optimal):
            break
        witness = sub.witness
        fixed.append(Constraint(LinExpr(e.coeffs, -sub.value), "=="))
    return Optimal(res.value, witness)

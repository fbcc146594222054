"""Positively homogeneous piecewise-linear expressions.

Trees built from linear forms with sums, rational scalings, min and max.
They denote continuous PH functions on the nonnegative orthant; the
certification engine in `arrangement` decides their sign exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .rational import DimensionError, RatLike, rat

Form = Tuple[Fraction, ...]


class Expr:
    __slots__ = ()

    dim: int

    def __add__(self, other: "Expr") -> "Expr":
        return Sum((self, other))

    def __sub__(self, other: "Expr") -> "Expr":
        return Sum((self, Scaled(Fraction(-1), other)))

    def __neg__(self) -> "Expr":
        return Scaled(Fraction(-1), self)

    def __rmul__(self, c: RatLike) -> "Expr":
        return Scaled(rat(c), self)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return evaluate(self, x)


@dataclass(frozen=True, eq=True)
class Lin(Expr):
    coeffs: Form

    @property
    def dim(self) -> int:
        return len(self.coeffs)


def _common_dim(terms) -> int:
    if not terms:
        raise ValueError("empty expression node")
    d = terms[0].dim
    for t in terms[1:]:
        if t.dim != d:
            raise DimensionError(f"mixed dimensions {d} and {t.dim}")
    return d


@dataclass(frozen=True, eq=True)
class Sum(Expr):
    terms: Tuple[Expr, ...]

    @property
    def dim(self) -> int:
        return _common_dim(self.terms)


@dataclass(frozen=True, eq=True)
class Scaled(Expr):
    factor: Fraction
    term: Expr

    @property
    def dim(self) -> int:
        return self.term.dim


@dataclass(frozen=True, eq=True)
class Min(Expr):
    terms: Tuple[Expr, ...]

    @property
    def dim(self) -> int:
        return _common_dim(self.terms)


@dataclass(frozen=True, eq=True)
class Max(Expr):
    terms: Tuple[Expr, ...]

    @property
    def dim(self) -> int:
        return _common_dim(self.terms)


def lin(*coeffs: RatLike) -> Lin:
    return Lin(tuple(rat(c) for c in coeffs))


def emin(*terms: Expr) -> Expr:
    return terms[0] if len(terms) == 1 else Min(tuple(terms))


def emax(*terms: Expr) -> Expr:
    return terms[0] if len(terms) == 1 else Max(tuple(terms))


def evaluate(e: Expr, x: Sequence[Fraction]) -> Fraction:
    if isinstance(e, Lin):
        if len(x) != len(e.coeffs):
            raise DimensionError(f"expected {len(e.coeffs)} coordinates, got {len(x)}")
        return sum((c * v for c, v in zip(e.coeffs, x) if c), Fraction(0))
    if isinstance(e, Sum):
        return sum((evaluate(t, x) for t in e.terms), Fraction(0))
    if isinstance(e, Scaled):
        return e.factor * evaluate(e.term, x)
    if isinstance(e, Min):
        return min(evaluate(t, x) for t in e.terms)
    if isinstance(e, Max):
        return max(evaluate(t, x) for t in e.terms)
    raise TypeError(f"not an expression: {e!r}")


def local_form(e: Expr, x: Sequence[Fraction]) -> Tuple[Fraction, Form]:
    """Value at x and the linear form of the branch selected at x.

    At a point interior to a cell of linearity the form is the gradient of
    the function on that cell; on cell boundaries it is one of the adjacent
    pieces.
    """
    if isinstance(e, Lin):
        return evaluate(e, x), e.coeffs
    if isinstance(e, Sum):
        val = Fraction(0)
        form = None
        for t in e.terms:
            v, f = local_form(t, x)
            val += v
            form = f if form is None else tuple(a + b for a, b in zip(form, f))
        return val, form
    if isinstance(e, Scaled):
        v, f = local_form(e.term, x)
        return e.factor * v, tuple(e.factor * a for a in f)
    if isinstance(e, (Min, Max)):
        pick = min if isinstance(e, Min) else max
        best = None
        for t in e.terms:
            v, f = local_form(t, x)
            if best is None or pick(v, best[0]) != best[0]:
                best = (v, f)
        return best
    raise TypeError(f"not an expression: {e!r}")


def substitute(e: Expr, args: Sequence[Expr]) -> Expr:
    """Compose: replace coordinate k by the expression args[k].

    Leaves become sums of scaled arguments, so the result is again a PHPL
    expression (on the arguments' ambient space).
    """
    memo: Dict[int, Expr] = {}

    def go(node: Expr) -> Expr:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Lin):
            if len(node.coeffs) != len(args):
                raise DimensionError("substitution arity mismatch")
            if any(node.coeffs):
                out = _lin_combination(node.coeffs, args)
            else:
                out = Lin((Fraction(0),) * args[0].dim)
        elif isinstance(node, Sum):
            out = Sum(tuple(go(t) for t in node.terms))
        elif isinstance(node, Scaled):
            out = Scaled(node.factor, go(node.term))
        elif isinstance(node, Min):
            out = Min(tuple(go(t) for t in node.terms))
        elif isinstance(node, Max):
            out = Max(tuple(go(t) for t in node.terms))
        else:
            raise TypeError(f"not an expression: {node!r}")
        memo[key] = out
        return out

    return go(e)


def _lin_combination(coeffs: Form, args: Sequence[Expr]) -> Expr:
    # fold purely linear arguments into a single leaf
    if all(isinstance(a, Lin) for a in args):
        d = args[0].dim
        acc = [Fraction(0)] * d
        for c, a in zip(coeffs, args):
            if c:
                for i, v in enumerate(a.coeffs):
                    acc[i] += c * v
        return Lin(tuple(acc))
    # otherwise merge shared min/max nodes so each appears once in the sum
    d = args[0].dim
    acc = [Fraction(0)] * d
    nodes: Dict[int, list] = {}
    for c, a in zip(coeffs, args):
        if c:
            _affine_parts(a, c, acc, nodes)
    terms = [n if k == 1 else Scaled(k, n) for n, k in nodes.values() if k]
    if any(acc) or not terms:
        terms.insert(0, Lin(tuple(acc)))
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _affine_parts(e: Expr, c: Fraction, acc: list, nodes: Dict[int, list]) -> None:
    """Add c*e into acc (linear part) and nodes (id -> [node, coefficient])."""
    if isinstance(e, Lin):
        for i, v in enumerate(e.coeffs):
            acc[i] += c * v
    elif isinstance(e, Scaled):
        _affine_parts(e.term, c * e.factor, acc, nodes)
    elif isinstance(e, Sum):
        for t in e.terms:
            _affine_parts(t, c, acc, nodes)
    else:
        slot = nodes.setdefault(id(e), [e, Fraction(0)])
        slot[1] += c


def restrict(e: Expr, keep: Sequence[int]) -> Expr:
    """Restrict to the face where every coordinate outside `keep` is zero,
    re-indexing the kept coordinates as 0..len(keep)-1."""
    memo: Dict[int, Expr] = {}

    def go(node: Expr) -> Expr:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Lin):
            out = Lin(tuple(node.coeffs[k] for k in keep))
        elif isinstance(node, Sum):
            out = Sum(tuple(go(t) for t in node.terms))
        elif isinstance(node, Scaled):
            out = Scaled(node.factor, go(node.term))
        elif isinstance(node, Min):
            out = Min(tuple(go(t) for t in node.terms))
        else:
            out = Max(tuple(go(t) for t in node.terms))
        memo[key] = out
        return out

    return go(e)


def _normalise_form(f: Form) -> Form:
    lead = next((c for c in f if c), None)
    if lead is None:
        return f
    a = abs(lead)
    return tuple(c / a for c in f)


def piece_forms(e: Expr) -> List[Form]:
    """Every linear form that can coincide with `e` on some open cell."""
    return _candidates(e, {})


def _candidates(node: Expr, memo: Dict[int, List[Form]]) -> List[Form]:
    key = id(node)
    if key in memo:
        return memo[key]
    if isinstance(node, Lin):
        res = [node.coeffs]
    elif isinstance(node, Scaled):
        res = [tuple(node.factor * a for a in f) for f in _candidates(node.term, memo)]
    elif isinstance(node, Sum):
        res = [tuple(Fraction(0) for _ in range(node.dim))]
        for t in node.terms:
            res = list(dict.fromkeys(tuple(a + b for a, b in zip(f, g)) for f in res for g in _candidates(t, memo)))
    else:
        res = list(dict.fromkeys(f for t in node.terms for f in _candidates(t, memo)))
    memo[key] = res
    return res


def kink_forms(e: Expr) -> List[Form]:
    """Linear forms whose zero sets contain every point where `e` may fail
    to be linear.  Built from pairwise differences of candidate pieces at
    min/max nodes; duplicates (up to positive scaling) are removed."""
    cand_memo: Dict[int, List[Form]] = {}
    seen_nodes = set()
    out: Dict[Form, None] = {}

    def cands(node: Expr) -> List[Form]:
        return _candidates(node, cand_memo)

    def walk(node: Expr) -> None:
        key = id(node)
        if key in seen_nodes:
            return
        seen_nodes.add(key)
        if isinstance(node, Lin):
            return
        if isinstance(node, Scaled):
            walk(node.term)
            return
        for t in node.terms:
            walk(t)
        if isinstance(node, (Min, Max)):
            groups = [cands(t) for t in node.terms]
            for i in range(len(groups)):
                for j in range(i + 1, len(groups)):
                    for f in groups[i]:
                        for g in groups[j]:
                            d = tuple(a - b for a, b in zip(f, g))
                            if any(d):
                                out[_normalise_form(d)] = None

    walk(e)
    return list(out)

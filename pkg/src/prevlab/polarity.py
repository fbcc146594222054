"""The hyperspace polarity on finite T0 spaces, by exhaustive enumeration.

A finite T0 space is a poset whose opens are the up-sets.  Its Smyth
hyperspace consists of the up-sets (compact saturated sets), its Hoare
hyperspace of the down-sets (closed sets), both including the empty set.
Q and C are orthogonal when they intersect.

Families of hyperspace members are bitmasks over an indexed member list,
so whole powersets of families can be processed with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

Subset = FrozenSet[int]

MAX_HYPERSPACE_SIZE = 5
MAX_VERIFY_SIZE = 4


@dataclass(frozen=True)
class FinitePoset:
    size: int
    leq: Tuple[Tuple[bool, ...], ...]

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise ValueError("a poset needs at least one element")
        object.__setattr__(self, "leq", tuple(tuple(bool(b) for b in row) for row in self.leq))
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise ValueError("leq must be a size x size matrix")
        r = self.leq
        for i in range(n):
            if not r[i][i]:
                raise ValueError(f"leq is not reflexive at {i}")
            for j in range(n):
                if i != j and r[i][j] and r[j][i]:
                    raise ValueError(f"leq is not antisymmetric at ({i},{j})")
                for k in range(n):
                    if r[i][j] and r[j][k] and not r[i][k]:
                        raise ValueError(f"leq is not transitive at ({i},{j},{k})")

    @staticmethod
    def from_pairs(size: int, pairs: Iterable[Tuple[int, int]]) -> "FinitePoset":
        """Reflexive-transitive closure of the given (x <= y) pairs."""
        m = [[i == j for j in range(size)] for i in range(size)]
        for a, b in pairs:
            m[a][b] = True
        for k in range(size):
            for i in range(size):
                if m[i][k]:
                    for j in range(size):
                        if m[k][j]:
                            m[i][j] = True
        return FinitePoset(size, tuple(tuple(r) for r in m))

    @staticmethod
    def antichain(size: int) -> "FinitePoset":
        return FinitePoset.from_pairs(size, [])

    @staticmethod
    def sierpinski() -> "FinitePoset":
        return FinitePoset.from_pairs(2, [(0, 1)])


@dataclass(frozen=True)
class SubsetFamily:
    members: FrozenSet[Subset]
    flavor: str  # "smyth" or "hoare"


def _is_up(P: FinitePoset, s: int) -> bool:
    return all(not (s >> i & 1) or all(s >> j & 1 for j in range(P.size) if P.leq[i][j]) for i in range(P.size))


def _is_down(P: FinitePoset, s: int) -> bool:
    return all(not (s >> i & 1) or all(s >> j & 1 for j in range(P.size) if P.leq[j][i]) for i in range(P.size))


def _members(P: FinitePoset, flavor: str) -> List[int]:
    test = _is_up if flavor == "smyth" else _is_down if flavor == "hoare" else None
    if test is None:
        raise ValueError(f"flavor must be 'smyth' or 'hoare', not {flavor!r}")
    return [s for s in range(1 << P.size) if test(P, s)]


def _to_set(mask: int) -> Subset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _to_mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << i
    return m


def hyperspace(P: FinitePoset, flavor: str) -> SubsetFamily:
    if P.size > MAX_HYPERSPACE_SIZE:
        raise ValueError(f"hyperspace enumeration is limited to {MAX_HYPERSPACE_SIZE} points")
    return SubsetFamily(frozenset(_to_set(s) for s in _members(P, flavor)), flavor)


def apply_sigma_tau(P: FinitePoset, direction: str, fam: Iterable[Iterable[int]]) -> Set[Subset]:
    """sigma: closed families of up-sets -> {C closed : C meets every Q};
    tau: families of down-sets -> {Q up-set : Q meets every C}."""
    if direction == "sigma":
        src, dst = "smyth", "hoare"
    elif direction == "tau":
        src, dst = "hoare", "smyth"
    else:
        raise ValueError(f"direction must be 'sigma' or 'tau', not {direction!r}")
    src_members = set(_members(P, src))
    fam_masks = [_to_mask(s) for s in fam]
    for m in fam_masks:
        if m not in src_members:
            kind = "up-set" if src == "smyth" else "down-set"
            raise ValueError(f"{sorted(_to_set(m))} is not a {kind} of the poset")
    return {_to_set(c) for c in _members(P, dst) if all(c & q for q in fam_masks)}


# -- exhaustive verification -------------------------------------------------------


def _perp_table(src: List[int], dst: List[int]) -> np.ndarray:
    """perp[A] = bitmask over dst of members meeting every member of the
    src-family A, for all 2^len(src) families A."""
    k = len(src)
    full = (1 << len(dst)) - 1
    meets = [sum(1 << j for j, d in enumerate(dst) if d & s) for s in src]
    table = np.empty(1 << k, dtype=np.int64)
    table[0] = full
    for bit in range(k):
        lo = 1 << bit
        table[lo : 2 * lo] = table[:lo] & meets[bit]
    return table


def _superset_masks(members: List[int]) -> List[int]:
    return [sum(1 << j for j, t in enumerate(members) if t & s == s) for s in members]


def _closed_flags(sup: List[int]) -> np.ndarray:
    """closed[F] for all families F: every member's supersets are in F."""
    k = len(sup)
    ok = np.ones(1 << k, dtype=bool)
    idx = np.arange(1 << k, dtype=np.int64)
    for i, s in enumerate(sup):
        has = (idx >> i) & 1 == 1
        ok &= ~has | ((idx & s) == s)
    return ok


@dataclass(frozen=True)
class PolarityReport:
    passed: bool
    checks: Tuple[Tuple[str, bool], ...]
    counterexample: Optional[Tuple[str, FrozenSet[Subset]]] = None


def verify_polarity_images(P: FinitePoset) -> PolarityReport:
    """Exhaustive check of the polarity's image characterizations.

    Both the closed families of the Smyth hyperspace (specialization is
    reverse inclusion) and the compact saturated families of the Hoare
    hyperspace (inclusion) are exactly the superset-closed families.
    """
    if P.size > MAX_VERIFY_SIZE:
        raise ValueError(f"exhaustive verification is limited to {MAX_VERIFY_SIZE} points")
    QE = _members(P, "smyth")
    CF = _members(P, "hoare")
    a_perp = _perp_table(QE, CF)  # A (families of up-sets) -> A^perp
    perp_b = _perp_table(CF, QE)  # B (families of down-sets) -> ^perp B
    closed_q = _closed_flags(_superset_masks(QE))
    saturated_c = _closed_flags(_superset_masks(CF))

    fam_q = np.arange(1 << len(QE), dtype=np.int64)
    fam_c = np.arange(1 << len(CF), dtype=np.int64)
    checks = []
    bad = None

    def record(name, arr, universe, members):
        nonlocal bad
        ok = bool(arr.all())
        checks.append((name, ok))
        if not ok and bad is None:
            i = int(np.argmin(arr))
            fam = frozenset(_to_set(members[j]) for j in range(len(members)) if universe[i] >> j & 1)
            bad = (name, fam)

    record("every ^perp B is closed", closed_q[perp_b], fam_c, CF)
    record("every A^perp is compact saturated", saturated_c[a_perp], fam_q, QE)
    record("A within ^perp(A^perp)", (perp_b[a_perp] & fam_q) == fam_q, fam_q, QE)
    record("B within (^perp B)^perp", (a_perp[perp_b] & fam_c) == fam_c, fam_c, CF)
    record("triple perp collapses (A side)", a_perp[perp_b[a_perp]] == a_perp, fam_q, QE)
    record("triple perp collapses (B side)", perp_b[a_perp[perp_b]] == perp_b, fam_c, CF)
    # sigma / tau are mutually inverse bijections
    record("tau(sigma(C)) = C on closed families", ~closed_q | (perp_b[a_perp] == fam_q), fam_q, QE)
    record("sigma(tau(Q)) = Q on saturated families", ~saturated_c | (a_perp[perp_b] == fam_c), fam_c, CF)
    img_b = np.zeros(1 << len(QE), dtype=bool)
    img_b[perp_b] = True
    img_a = np.zeros(1 << len(CF), dtype=bool)
    img_a[a_perp] = True
    record("image of ^perp is exactly the closed families", img_b == closed_q, fam_q, QE)
    record("image of perp is exactly the saturated families", img_a == saturated_c, fam_c, CF)
    return PolarityReport(all(ok for _, ok in checks), tuple(checks), bad)


def all_posets(size: int) -> List[FinitePoset]:
    """Every labeled partial order on {0..size-1}."""
    pairs = [(i, j) for i in range(size) for j in range(size) if i < j]
    out = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        m = [[i == j for j in range(size)] for i in range(size)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                m[i][j] = True
            elif c == 2:
                m[j][i] = True
        transitive = all(
            not (m[i][j] and m[j][k]) or m[i][k] for i in range(size) for j in range(size) for k in range(size)
        )
        if transitive:
            out.append(FinitePoset(size, tuple(tuple(r) for r in m)))
    return out

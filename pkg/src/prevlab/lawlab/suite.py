"""Run the registered laws and collect per-law reports."""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from .laws import REGISTRY, Trial


@dataclass(frozen=True)
class Failure:
    trial: int
    message: str
    inputs: Tuple[Tuple[str, str], ...]

    def to_json(self) -> dict:
        return {"trial": self.trial, "message": self.message, "inputs": dict(self.inputs)}


@dataclass(frozen=True)
class LawReport:
    name: str
    trials: int
    passes: int
    failures: Tuple[Failure, ...] = ()
    runtime: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, with_runtime: bool = False) -> dict:
        out = {
            "name": self.name,
            "trials": self.trials,
            "passes": self.passes,
            "failures": [f.to_json() for f in self.failures],
        }
        if with_runtime:
            out["runtime"] = round(self.runtime, 3)
        return out


def trial_seed(seed: int, name: str, index: int) -> int:
    return (seed * 1000003 + index * 7919 + zlib.crc32(name.encode())) % 2**63


def run_law(name: str, seed: int, trials: int, n: int) -> LawReport:
    law = REGISTRY[name]
    start = time.perf_counter()
    failures: List[Failure] = []
    for i in range(trials):
        t = Trial(random.Random(trial_seed(seed, name, i)), n)
        try:
            law.run(t)
        except Exception as exc:  # any exception counts against the law
            msg = f"{type(exc).__name__}: {exc}"
            failures.append(Failure(i, msg, tuple(sorted(t.inputs.items()))))
    return LawReport(name, trials, trials - len(failures), tuple(failures), time.perf_counter() - start)


def applicable_laws(n: int, laws: Optional[Iterable[str]] = None) -> List[str]:
    names = sorted(REGISTRY) if laws is None else sorted(laws)
    for name in names:
        if name not in REGISTRY:
            raise KeyError(f"unknown law {name!r}")
    return [name for name in names if n <= REGISTRY[name].max_n]


def run_law_suite(seed: int, trials: int, n: int, laws: Optional[Iterable[str]] = None) -> List[LawReport]:
    """Reports sorted by law name.  trials = 0 yields an empty list.

    Laws whose exact procedures do not reach dimension n are skipped.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if trials == 0:
        return []
    return [run_law(name, seed, trials, n) for name in applicable_laws(n, laws)]


def suite_passed(reports: Iterable[LawReport]) -> bool:
    return all(r.ok for r in reports)

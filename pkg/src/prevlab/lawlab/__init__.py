"""Randomized law checks and exact counterexample reproductions."""

from .examples import EXAMPLES, Check, ExampleVerdict, UnknownExample, reproduce_example
from .generate import FlavorUnsatisfiable, GenParams, random_point, random_prevision
from .laws import REGISTRY, LawViolation
from .mutants import MUTANTS, inject
from .suite import Failure, LawReport, run_law, run_law_suite, suite_passed

__all__ = [
    "EXAMPLES", "Check", "ExampleVerdict", "UnknownExample", "reproduce_example",
    "FlavorUnsatisfiable", "GenParams", "random_point", "random_prevision",
    "REGISTRY", "LawViolation", "MUTANTS", "inject",
    "Failure", "LawReport", "run_law", "run_law_suite", "suite_passed",
]

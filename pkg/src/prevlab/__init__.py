"""Exact computations with previsions on finite spaces.

A prevision on an n-point space is a monotone, positively homogeneous,
piecewise-linear functional on the nonnegative orthant.  Everything here
uses rational arithmetic; nothing passes through floating point.
"""

from .prevcore import (
    ClassFlags,
    Incomparable,
    Order,
    PostconditionFailure,
    Prevision,
    classify,
    combine,
    compare,
    describe,
    equal,
    eval_prevision,
    gauge,
    leq,
    linear,
    max_of,
    max_of_super,
    min_of,
    min_of_sub,
    unit_prevision,
    zero_prevision,
)
from .transforms import Flavor

__version__ = "0.1.0"

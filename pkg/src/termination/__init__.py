"""Non-uniform termination: bounds, deciders and cross validation."""

from .bounds import BigBound, Bounds, bounds, depth_bound, level_bound, size_factor
from .decide import Answer, Method, Verdict, decide, decide_by_bound, resolve_class
from .cross_validate import AgreementReport, check_bounds, cross_validate

__all__ = [
    "BigBound",
    "Bounds",
    "bounds",
    "depth_bound",
    "level_bound",
    "size_factor",
    "Answer",
    "Method",
    "Verdict",
    "decide",
    "decide_by_bound",
    "resolve_class",
    "AgreementReport",
    "check_bounds",
    "cross_validate",
]

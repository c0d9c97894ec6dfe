"""Persisted corpus runs: deciders, simplification and linearization checked on random instances."""

from .analytics import ValidationAnalytics
from .database import InstanceRecord, ValidationDatabase
from .runner import KIND_CLASSES, ValidationRunner, default_params

__all__ = [
    "ValidationAnalytics",
    "InstanceRecord",
    "ValidationDatabase",
    "KIND_CLASSES",
    "ValidationRunner",
    "default_params",
]

"""Linearization of guarded TGD sets over type predicates."""

from .types import SigmaType, TypeRegistry, canonical_type, guard_shapes, int_term
from .completion import TypeSaturator, completion, restrict
from .linearize import (
    Linearization,
    linearize_database,
    linearize_program,
    linearize_tgd,
)
from .partition import el_partition, linearized_partition

__all__ = [
    "SigmaType",
    "TypeRegistry",
    "canonical_type",
    "guard_shapes",
    "int_term",
    "TypeSaturator",
    "completion",
    "restrict",
    "Linearization",
    "linearize_database",
    "linearize_program",
    "linearize_tgd",
    "el_partition",
    "linearized_partition",
]

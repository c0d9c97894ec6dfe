"""Simplification of linear TGD sets into simple-linear ones."""

from .simplify import (
    bell_number,
    id_tuple,
    parse_simplified_name,
    simplified_name,
    simplify_atom,
    simplify_database,
    simplify_program,
    simplify_rules,
    simplify_tgd,
    specializations,
)
from .partition import PartitionReport, es_partition, verify_partition

__all__ = [
    "bell_number",
    "id_tuple",
    "parse_simplified_name",
    "simplified_name",
    "simplify_atom",
    "simplify_database",
    "simplify_program",
    "simplify_rules",
    "simplify_tgd",
    "specializations",
    "PartitionReport",
    "es_partition",
    "verify_partition",
]

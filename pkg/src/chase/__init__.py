"""Semi-oblivious chase: matching, derivations and the guarded forest."""

from .matching import homomorphisms, find_homomorphism, match_atom
from .engine import (
    ChaseCaps,
    ChaseOutcome,
    ChaseStatus,
    Strategy,
    Trigger,
    find_active_trigger,
    result_of_trigger,
    run_chase,
)
from .forest import all_level_counts, forest_level_counts, tree_atoms

__all__ = [
    "homomorphisms",
    "find_homomorphism",
    "match_atom",
    "ChaseCaps",
    "ChaseOutcome",
    "ChaseStatus",
    "Strategy",
    "Trigger",
    "find_active_trigger",
    "result_of_trigger",
    "run_chase",
    "all_level_counts",
    "forest_level_counts",
    "tree_atoms",
]

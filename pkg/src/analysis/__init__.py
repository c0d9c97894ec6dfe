"""Dependency graphs, position ranks, weak acyclicity and the matching UCQs."""

from .dependency_graph import (
    INFINITE,
    AcyclicityReport,
    CycleWitness,
    DependencyGraph,
    Edge,
    EdgeKind,
    Position,
    build_dependency_graph,
    is_d_weakly_acyclic,
    is_weakly_acyclic,
    position_ranks,
)
from .ucq import Disjunct, Ucq, UcqVariant, build_ucq, eval_ucq

__all__ = [
    "INFINITE",
    "AcyclicityReport",
    "CycleWitness",
    "DependencyGraph",
    "Edge",
    "EdgeKind",
    "Position",
    "build_dependency_graph",
    "is_d_weakly_acyclic",
    "is_weakly_acyclic",
    "position_ranks",
    "Disjunct",
    "Ucq",
    "UcqVariant",
    "build_ucq",
    "eval_ucq",
]

"""Dependency graph over predicate positions, position ranks and weak acyclicity."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx

from ..core.classify import ProgramClass, classify
from ..core.model import Atom, Program

logger = logging.getLogger(__name__)

INFINITE = math.inf
Rank = Union[int, float]


@dataclass(frozen=True, order=True)
class Position:
    """The index-th (1-based) argument position of predicate."""

    predicate: str
    index: int

    def __str__(self) -> str:
        return f"({self.predicate},{self.index})"


class EdgeKind(Enum):
    NORMAL = "normal"
    SPECIAL = "special"


@dataclass(frozen=True)
class Edge:
    source: Position
    target: Position
    kind: EdgeKind
    tgd: str

    def sort_key(self) -> Tuple[Position, Position, str, str]:
        return (self.source, self.target, self.kind.value, self.tgd)

    def as_dict(self) -> Dict[str, str]:
        return {"from": str(self.source), "to": str(self.target), "kind": self.kind.value, "tgd": self.tgd}


def _positions_of(atoms: Iterable[Atom]) -> Dict[object, List[Position]]:
    found: Dict[object, List[Position]] = {}
    for atom in atoms:
        for index, arg in enumerate(atom.args, start=1):
            found.setdefault(arg, []).append(Position(atom.predicate, index))
    return found


class DependencyGraph:
    """dg(program): normal and special edges between positions, plus the predicate graph."""

    def __init__(self, program: Program):
        self.program = program
        self.graph = nx.MultiDiGraph()
        self.predicates = nx.DiGraph()
        for predicate in sorted(program.schema):
            self.predicates.add_node(predicate)
            for index in range(1, program.schema[predicate] + 1):
                self.graph.add_node(Position(predicate, index))

        edges: Set[Edge] = set()
        for tgd in program:
            body_positions = _positions_of(tgd.body)
            head_positions = _positions_of(tgd.head)
            ex_targets = [pos for var in tgd.ex_vars for pos in head_positions[var]]
            for var in tgd.frontier:
                for source in body_positions[var]:
                    for target in head_positions[var]:
                        edges.add(Edge(source, target, EdgeKind.NORMAL, tgd.id))
                    for target in ex_targets:
                        edges.add(Edge(source, target, EdgeKind.SPECIAL, tgd.id))
            for body_atom in tgd.body:
                for head_atom in tgd.head:
                    self.predicates.add_edge(body_atom.predicate, head_atom.predicate)

        self.edges: List[Edge] = sorted(edges, key=Edge.sort_key)
        for edge in self.edges:
            self.graph.add_edge(edge.source, edge.target, kind=edge.kind, tgd=edge.tgd)

        # collapsed view: one edge per (source, target), weight 1 if any special edge
        self.collapsed = nx.DiGraph()
        self.collapsed.add_nodes_from(self.graph.nodes)
        for edge in self.edges:
            weight = 1 if edge.kind is EdgeKind.SPECIAL else 0
            if self.collapsed.has_edge(edge.source, edge.target):
                weight = max(weight, self.collapsed[edge.source][edge.target]["weight"])
            self.collapsed.add_edge(edge.source, edge.target, weight=weight)

        logger.debug(
            f"Dependency graph: {self.graph.number_of_nodes()} positions, "
            f"{len(self.normal_edges())} normal and {len(self.special_edges())} special edges"
        )

    @property
    def positions(self) -> List[Position]:
        return sorted(self.graph.nodes)

    def normal_edges(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.kind is EdgeKind.NORMAL]

    def special_edges(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.kind is EdgeKind.SPECIAL]

    def reaches(self, source: Position, target: Position) -> bool:
        """Position reachability by a (possibly empty) path."""
        if source == target:
            return True
        if source not in self.collapsed or target not in self.collapsed:
            return False
        return nx.has_path(self.collapsed, source, target)

    def predicate_reaches(self, source: str, target: str) -> bool:
        """R reaches P in the predicate graph; reflexive."""
        if source == target:
            return True
        if source not in self.predicates or target not in self.predicates:
            return False
        return nx.has_path(self.predicates, source, target)

    def predicates_reaching(self, targets: Iterable[str]) -> FrozenSet[str]:
        """Schema predicates from which some target is reachable."""
        result: Set[str] = set()
        for target in targets:
            if target in self.predicates:
                result.add(target)
                result.update(nx.ancestors(self.predicates, target))
        return frozenset(result)

    def cyclic_special_edges(self) -> List[Edge]:
        """Special edges (u, v) whose target reaches their source."""
        return [edge for edge in self.special_edges() if self.reaches(edge.target, edge.source)]

    def cycle_through(self, edge: Edge) -> List[Position]:
        """A closed walk source -> target -> ... -> source using edge."""
        back = nx.shortest_path(self.collapsed, edge.target, edge.source)
        return [edge.source] + list(back)


def build_dependency_graph(program: Program) -> DependencyGraph:
    return DependencyGraph(program)


def position_ranks(graph: DependencyGraph) -> Dict[Position, Rank]:
    """Maximum number of special edges on a path ending in each position.

    Positions on or reachable from a cycle through a special edge get INFINITE.
    """
    collapsed = graph.collapsed
    condensed = nx.condensation(collapsed)
    members = condensed.graph["mapping"]
    bad: Set[int] = set()
    for source, target, weight in collapsed.edges(data="weight"):
        if weight and members[source] == members[target]:
            bad.add(members[source])

    component_rank: Dict[int, Rank] = {}
    for component in nx.topological_sort(condensed):
        if component in bad:
            component_rank[component] = INFINITE
            continue
        rank: Rank = 0
        for node in condensed.nodes[component]["members"]:
            for pred, _, weight in collapsed.in_edges(node, data="weight"):
                pred_component = members[pred]
                if pred_component == component:
                    continue
                rank = max(rank, component_rank[pred_component] + weight)
        component_rank[component] = rank
    return {position: component_rank[members[position]] for position in graph.positions}


@dataclass(frozen=True)
class CycleWitness:
    """A special edge closing a cycle, and a database predicate supporting it."""

    edge: Edge
    cycle: Tuple[Position, ...]
    support: str

    def as_dict(self) -> Dict[str, object]:
        return {
            "specialEdge": self.edge.as_dict(),
            "cycle": [str(position) for position in self.cycle],
            "support": self.support,
        }

    def __str__(self) -> str:
        path = " -> ".join(str(position) for position in self.cycle)
        return (
            f"special edge {self.edge.source} -> {self.edge.target} ({self.edge.tgd}) "
            f"on cycle {path}, supported by {self.support}"
        )


@dataclass(frozen=True)
class AcyclicityReport:
    acyclic: bool
    witness: Optional[CycleWitness] = None
    # the answer characterizes chase termination only for simple linear programs
    exact: bool = True

    def __bool__(self) -> bool:
        return self.acyclic


def is_d_weakly_acyclic(
    db: Iterable[Atom], program: Program, graph: Optional[DependencyGraph] = None
) -> AcyclicityReport:
    """Decide whether program is weakly acyclic relative to the database db.

    Returns a witness for the first (in sorted order) special edge lying on a
    cycle whose source predicate is reachable from a database predicate.
    """
    graph = graph or DependencyGraph(program)
    exact = classify(program) is ProgramClass.SIMPLE_LINEAR
    db_predicates = sorted({atom.predicate for atom in db})
    for edge in graph.cyclic_special_edges():
        target = edge.source.predicate
        for predicate in db_predicates:
            if graph.predicate_reaches(predicate, target):
                witness = CycleWitness(edge, tuple(graph.cycle_through(edge)), predicate)
                logger.info(f"Not weakly acyclic relative to the database: {witness}")
                return AcyclicityReport(False, witness, exact)
    return AcyclicityReport(True, None, exact)


def is_weakly_acyclic(program: Program, graph: Optional[DependencyGraph] = None) -> bool:
    """Uniform weak acyclicity: no cycle of dg(program) contains a special edge."""
    graph = graph or DependencyGraph(program)
    return not graph.cyclic_special_edges()

"""Database-independent UCQs whose truth on D means 'not weakly acyclic relative to D'."""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import FrozenSet, Iterable, List, Tuple

from ..core.classify import ProgramClass, classify
from ..core.model import Atom, Program
from ..errors import ClassError
from ..simplification.simplify import parse_simplified_name, simplify_rules
from ..textio.render import render_predicate
from .dependency_graph import DependencyGraph

logger = logging.getLogger(__name__)

PositionPair = Tuple[int, int]


class UcqVariant(Enum):
    SL = "sl"
    LINEAR_SIMPLIFIED = "linear"


@dataclass(frozen=True)
class Disjunct:
    """A single-atom query R(x1..xn) with equality and inequality constraints (1-based)."""

    predicate: str
    arity: int
    equalities: FrozenSet[PositionPair] = frozenset()
    inequalities: FrozenSet[PositionPair] = frozenset()

    def matches(self, fact: Atom) -> bool:
        if fact.predicate != self.predicate or fact.arity != self.arity:
            return False
        args = fact.args
        if any(args[i - 1] != args[j - 1] for i, j in self.equalities):
            return False
        return all(args[i - 1] != args[j - 1] for i, j in self.inequalities)

    def render(self) -> str:
        """?- R(X1,X1,X2), X1 != X2."""
        classes: List[int] = []
        for position in range(1, self.arity + 1):
            same = [i for i, j in self.equalities if j == position and i < position]
            classes.append(classes[min(same) - 1] if same else max(classes, default=0) + 1)
        variables = [f"X{k}" for k in classes]
        constraints = sorted(
            {(classes[i - 1], classes[j - 1]) for i, j in self.inequalities if classes[i - 1] != classes[j - 1]}
        )
        parts = [f"{render_predicate(self.predicate)}({','.join(variables)})"]
        parts.extend(f"X{a} != X{b}" for a, b in constraints)
        return f"?- {', '.join(parts)}."


@dataclass(frozen=True)
class Ucq:
    disjuncts: Tuple[Disjunct, ...]
    variant: UcqVariant

    def __len__(self) -> int:
        return len(self.disjuncts)

    def render(self) -> str:
        if not self.disjuncts:
            return "% empty union: no database satisfies it\n"
        return "\n".join(disjunct.render() for disjunct in self.disjuncts) + "\n"


def _cycle_predicates(program: Program) -> Tuple[DependencyGraph, FrozenSet[str]]:
    graph = DependencyGraph(program)
    targets = {edge.source.predicate for edge in graph.cyclic_special_edges()}
    return graph, graph.predicates_reaching(targets)


def build_ucq(program: Program, variant: UcqVariant = UcqVariant.SL) -> Ucq:
    """Build the UCQ for program.

    SL: one disjunct per predicate reaching a special-edge cycle.
    LINEAR_SIMPLIFIED: one disjunct per such simplified predicate of the program,
    written over the base predicate with the equality pattern of its id tuple.

    Raises:
        ClassError: If program is outside the class the variant needs.
    """
    program_class = classify(program)
    if variant is UcqVariant.SL:
        if program_class is not ProgramClass.SIMPLE_LINEAR:
            raise ClassError(f"the SL UCQ needs a simple linear program, got {program_class.label}")
        _, predicates = _cycle_predicates(program)
        disjuncts = [Disjunct(name, program.schema[name]) for name in sorted(predicates)]
    else:
        if not program_class.within(ProgramClass.LINEAR):
            raise ClassError(f"the linear UCQ needs a linear program, got {program_class.label}")
        _, predicates = _cycle_predicates(simplify_rules(program))
        disjuncts = []
        for name in sorted(predicates):
            parsed = parse_simplified_name(name)
            if parsed is None:
                continue
            base, ids = parsed
            pairs = list(combinations(range(1, len(ids) + 1), 2))
            disjuncts.append(
                Disjunct(
                    base,
                    len(ids),
                    frozenset((i, j) for i, j in pairs if ids[i - 1] == ids[j - 1]),
                    frozenset((i, j) for i, j in pairs if ids[i - 1] != ids[j - 1]),
                )
            )
    logger.info(f"Built {variant.value} UCQ with {len(disjuncts)} disjuncts")
    return Ucq(tuple(disjuncts), variant)


def eval_ucq(query: Ucq, db: Iterable[Atom]) -> bool:
    """True iff some fact satisfies some disjunct."""
    facts = list(db)
    return any(disjunct.matches(fact) for disjunct in query.disjuncts for fact in facts)

"""Termination deciders: characterizations, the bound-based decider and the capped chase."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional

from ..analysis.dependency_graph import AcyclicityReport, CycleWitness, is_d_weakly_acyclic
from ..chase.engine import ChaseCaps, ChaseOutcome, Strategy, run_chase
from ..core.classify import ProgramClass, classify
from ..core.model import Atom, Program
from ..errors import BoundCeilingError, ClassError, LinearizationBudgetError, SimplificationError
from ..linearization.linearize import linearize_program
from ..simplification.simplify import simplify_program
from .bounds import Bounds, bounds

logger = logging.getLogger(__name__)


class Answer(Enum):
    TERMINATES = "Terminates"
    DIVERGES = "Diverges"
    UNKNOWN = "Unknown"

    @property
    def exit_code(self) -> int:
        return {Answer.TERMINATES: 0, Answer.DIVERGES: 1, Answer.UNKNOWN: 2}[self]


class Method(Enum):
    CHARACTERIZATION = "characterization"
    BOUND = "bound"
    CAPPED_CHASE = "capped-chase"


@dataclass
class Verdict:
    """Answer to 'is the chase of this database with this program finite?' plus evidence."""

    answer: Answer
    method: Method
    program_class: ProgramClass
    witness: Optional[CycleWitness] = None
    outcome: Optional[ChaseOutcome] = None
    bounds: Optional[Bounds] = None
    notes: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return self.answer.exit_code

    @property
    def stats(self) -> Optional[Dict[str, int]]:
        return self.outcome.stats() if self.outcome is not None else None

    def __str__(self) -> str:
        return f"{self.answer.value} ({self.program_class.label}, {self.method.value})"


def resolve_class(program: Program, requested: Optional[ProgramClass] = None) -> ProgramClass:
    """The class to decide with: the program's own class unless a wider one is requested.

    Raises:
        ClassError: If the program does not belong to the requested class.
    """
    actual = classify(program)
    if requested is None:
        return actual
    if not actual.within(requested):
        raise ClassError(f"program is {actual.label}, not {requested.label}")
    return requested


def _characterization(db: frozenset, program: Program, program_class: ProgramClass) -> AcyclicityReport:
    if program_class is ProgramClass.SIMPLE_LINEAR:
        return is_d_weakly_acyclic(db, program)
    if program_class is ProgramClass.LINEAR:
        simple_db, simple_rules = simplify_program(db, program)
        return is_d_weakly_acyclic(simple_db, simple_rules)
    lin = linearize_program(db, program)
    if classify(lin.program) is ProgramClass.SIMPLE_LINEAR:
        return is_d_weakly_acyclic(lin.database, lin.program)
    simple_db, simple_rules = simplify_program(lin.database, lin.program)
    return is_d_weakly_acyclic(simple_db, simple_rules)


def decide(
    db: Iterable[Atom],
    program: Program,
    program_class: Optional[ProgramClass] = None,
    method: Method = Method.CHARACTERIZATION,
    caps: Optional[ChaseCaps] = None,
    ceiling: Optional[int] = None,
) -> Verdict:
    """Decide whether chase(db, program) is finite.

    Simple linear, linear and guarded programs are decided exactly by weak
    acyclicity of (a transformation of) the program relative to the database.
    General programs get a capped chase: Terminates if it finishes, else Unknown.
    """
    db = frozenset(db)
    program_class = resolve_class(program, program_class)
    if program_class is ProgramClass.GENERAL:
        return _capped(db, program, caps)
    if method is Method.BOUND:
        return decide_by_bound(db, program, program_class, ceiling)

    try:
        report = _characterization(db, program, program_class)
    except (LinearizationBudgetError, SimplificationError) as e:
        logger.warning(f"Characterization unavailable ({e}); falling back to the bound method")
        verdict = decide_by_bound(db, program, program_class, ceiling)
        verdict.notes.append(f"characterization unavailable: {e}")
        return verdict

    answer = Answer.TERMINATES if report.acyclic else Answer.DIVERGES
    verdict = Verdict(
        answer,
        Method.CHARACTERIZATION,
        program_class,
        witness=report.witness,
        bounds=bounds(program, program_class).for_database(len(db)),
    )
    logger.info(f"Decided {verdict}")
    return verdict


def _capped(db: frozenset, program: Program, caps: Optional[ChaseCaps]) -> Verdict:
    outcome = run_chase(db, program, caps)
    answer = Answer.TERMINATES if outcome.finished else Answer.UNKNOWN
    verdict = Verdict(answer, Method.CAPPED_CHASE, ProgramClass.GENERAL, outcome=outcome)
    if not outcome.finished:
        verdict.notes.append(f"chase stopped at the {outcome.cap_fired} cap; no characterization applies")
    return verdict


def decide_by_bound(
    db: Iterable[Atom],
    program: Program,
    program_class: Optional[ProgramClass] = None,
    ceiling: Optional[int] = None,
    strategy: Strategy = Strategy.LIFO,
) -> Verdict:
    """Chase until finished, past the size bound, or past the depth bound.

    The run is capped at min(size bound, ceiling) atoms. Finishing means
    Terminates; exceeding the size bound or the depth bound means Diverges.

    Raises:
        ClassError: For general programs.
        BoundCeilingError: If the ceiling is reached while still below the size bound.
    """
    if ceiling is None:
        from ..config import Config

        ceiling = Config.BOUND_CEILING
    db = frozenset(db)
    program_class = resolve_class(program, program_class)
    if program_class is ProgramClass.GENERAL:
        raise ClassError("the bound method needs a simple linear, linear or guarded program")
    limits = bounds(program, program_class).for_database(len(db))
    size_within_ceiling = limits.size.at_most(ceiling)
    cap = max(1, limits.size.value if size_within_ceiling else ceiling)
    depth_limit = limits.d.value
    outcome = run_chase(db, program, ChaseCaps.of(cap, cap), strategy=strategy, depth_limit=depth_limit)

    if outcome.finished:
        answer = Answer.TERMINATES
    elif outcome.cap_fired == "depth":
        answer = Answer.DIVERGES
    elif size_within_ceiling:
        answer = Answer.DIVERGES
    else:
        raise BoundCeilingError(
            f"|D| * f = {limits.size} exceeds the ceiling of {ceiling} atoms and the chase "
            f"reached the ceiling undecided; use the characterization method"
        )
    verdict = Verdict(answer, Method.BOUND, program_class, outcome=outcome, bounds=limits)
    if outcome.cap_fired == "depth":
        verdict.notes.append(f"a term deeper than d = {limits.d} appeared")
    logger.info(f"Decided {verdict}")
    return verdict

"""Agreement checks between the deciders, the UCQ, and the bounds."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from ..analysis.ucq import UcqVariant, build_ucq, eval_ucq
from ..chase.engine import ChaseOutcome
from ..chase.forest import all_level_counts
from ..core.classify import ProgramClass, classify
from ..core.model import Atom, Program
from ..errors import BoundCeilingError, ClassError
from .bounds import bounds, level_bound
from .decide import Answer, Method, Verdict, decide, decide_by_bound

logger = logging.getLogger(__name__)


@dataclass
class AgreementReport:
    program_class: ProgramClass
    characterization: Verdict
    bound: Optional[Verdict]
    ucq_satisfied: bool
    refused: Optional[str] = None

    @property
    def answers(self) -> List[Answer]:
        ucq_answer = Answer.DIVERGES if self.ucq_satisfied else Answer.TERMINATES
        answers = [self.characterization.answer, ucq_answer]
        if self.bound is not None:
            answers.append(self.bound.answer)
        return answers

    @property
    def agree(self) -> bool:
        return len(set(self.answers)) == 1

    def as_dict(self) -> dict:
        return {
            "class": self.program_class.label,
            "characterization": self.characterization.answer.value,
            "bound": self.bound.answer.value if self.bound else None,
            "ucq": self.ucq_satisfied,
            "agree": self.agree,
            "refused": self.refused,
        }


def cross_validate(db: Iterable[Atom], program: Program, ceiling: Optional[int] = None) -> AgreementReport:
    """Run the characterization, the bound-based decider and the UCQ on one instance.

    Raises:
        ClassError: Unless the program is simple linear or linear.
    """
    db = frozenset(db)
    program_class = classify(program)
    if program_class is ProgramClass.SIMPLE_LINEAR:
        variant = UcqVariant.SL
    elif program_class is ProgramClass.LINEAR:
        variant = UcqVariant.LINEAR_SIMPLIFIED
    else:
        raise ClassError(f"cross validation covers simple linear and linear programs, got {program_class.label}")

    characterization = decide(db, program, method=Method.CHARACTERIZATION)
    ucq_satisfied = eval_ucq(build_ucq(program, variant), db)
    bound: Optional[Verdict] = None
    refused: Optional[str] = None
    try:
        bound = decide_by_bound(db, program, ceiling=ceiling)
    except BoundCeilingError as e:
        refused = str(e)
    report = AgreementReport(program_class, characterization, bound, ucq_satisfied, refused)
    if not report.agree:
        logger.warning(f"Deciders disagree: {report.as_dict()}")
    return report


def check_bounds(db: Iterable[Atom], program: Program, outcome: ChaseOutcome) -> List[str]:
    """Violations of the size, depth and per-level forest bounds on a finished chase."""
    db = frozenset(db)
    program_class = classify(program)
    if program_class is ProgramClass.GENERAL or not outcome.finished:
        return []
    limits = bounds(program, program_class).for_database(len(db))
    violations: List[str] = []
    if limits.size.value is not None and len(outcome) > limits.size.value:
        violations.append(f"|chase| = {len(outcome)} exceeds |D| * f = {limits.size}")
    if limits.d.value is not None and outcome.max_depth > limits.d.value:
        violations.append(f"maxdepth {outcome.max_depth} exceeds d = {limits.d}")
    for root, levels in all_level_counts(outcome).items():
        for level, count in levels.items():
            if count > level_bound(program, level):
                violations.append(f"level {level} of the tree at {root} has {count} atoms")
    return violations

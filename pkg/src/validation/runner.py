"""Seeded corpus runs that check the deciders and transformations against each other."""

import logging
from dataclasses import asdict
from typing import Any, Callable, Dict, Optional, Tuple

from ..chase.engine import ChaseCaps, ChaseOutcome, run_chase
from ..core.classify import ProgramClass
from ..errors import ChasegateError, LinearizationBudgetError, PartitionError, SimplificationError
from ..generators.random_gen import RandomParams, gen_random
from ..linearization.linearize import linearize_program
from ..linearization.partition import linearized_partition
from ..simplification.partition import es_partition
from ..simplification.simplify import simplify_program
from ..termination.cross_validate import check_bounds, cross_validate
from ..termination.decide import Answer, decide
from ..textio.parser import SourceProgram
from .database import InstanceRecord, ValidationDatabase

logger = logging.getLogger(__name__)

# A chase capped while its counterpart finished is rerun with caps this many times larger.
CAP_SCALE = 4

KIND_CLASSES = {
    "sl": ProgramClass.SIMPLE_LINEAR,
    "l": ProgramClass.LINEAR,
    "simplify": ProgramClass.LINEAR,
    "linearize": ProgramClass.GUARDED,
}


def default_params(kind: str) -> RandomParams:
    """Instance shapes small enough for every check of the kind to finish."""
    program_class = KIND_CLASSES[kind]
    if kind == "linearize":
        return RandomParams(program_class, preds=3, max_arity=2, tgds=3, facts=3, constants=3)
    return RandomParams(program_class, preds=4, max_arity=3, tgds=5, facts=8, constants=4)


class ValidationRunner:
    """Generates seeded instances, checks them and stores every outcome."""

    def __init__(self, db: Optional[ValidationDatabase] = None, caps: Optional[ChaseCaps] = None):
        self.db = db or ValidationDatabase()
        self.caps = caps or ChaseCaps.of(20_000)
        self.db.init_tables()
        self._checks: Dict[str, Callable[[SourceProgram, int], InstanceRecord]] = {
            "sl": self._check_deciders,
            "l": self._check_deciders,
            "simplify": self._check_simplification,
            "linearize": self._check_linearization,
        }

    def run(
        self,
        kind: str,
        count: int,
        start_seed: int = 0,
        params: Optional[RandomParams] = None,
    ) -> Dict[str, Any]:
        """Check count instances with seeds start_seed, start_seed+1, ...

        Returns:
            Summary with run_id, kind, total, agreements, refusals and disagreements.

        Raises:
            ValueError: For an unknown kind or a non-positive count.
        """
        if kind not in self._checks:
            raise ValueError(f"Unknown validation kind: {kind!r} (expected one of {', '.join(self._checks)})")
        if count < 1:
            raise ValueError("count must be at least 1")
        params = params or default_params(kind)
        params_doc = {k: (v.value if isinstance(v, ProgramClass) else v) for k, v in asdict(params).items()}
        run_id = self.db.start_run(kind, params.program_class.label, start_seed, count, params_doc)
        logger.info(f"Validation run {run_id}: {count} {kind} instances from seed {start_seed}")

        check = self._checks[kind]
        for seed in range(start_seed, start_seed + count):
            instance = gen_random(params, seed)
            try:
                record = check(instance, seed)
            except ChasegateError as e:
                record = InstanceRecord(seed, params.program_class.label, note=f"error: {e}")
            if record.agree is False:
                logger.warning(f"Seed {seed}: {record.note}")
            self.db.record_instance(run_id, record)

        counts = self.db.finish_run(run_id)
        return {"run_id": run_id, "kind": kind, **counts}

    def _check_deciders(self, instance: SourceProgram, seed: int) -> InstanceRecord:
        db, program = instance.database, instance.program
        report = cross_validate(db, program)
        record = InstanceRecord(
            seed,
            report.program_class.label,
            characterization=report.characterization.answer.value,
            bound=report.bound.answer.value if report.bound else None,
            ucq="satisfied" if report.ucq_satisfied else "not satisfied",
        )
        if report.bound is not None and report.bound.outcome is not None:
            outcome = report.bound.outcome
            record.chase_atoms = len(outcome)
            record.max_depth = outcome.max_depth
            violations = check_bounds(db, program, outcome)
            if violations:
                record.agree = False
                record.note = "; ".join(violations)
                return record
        if not report.agree:
            record.agree = False
            record.note = f"answers differ: {report.as_dict()}"
        elif report.refused:
            record.note = f"bound method refused: {report.refused}"
        else:
            record.agree = True
        return record

    def _check_simplification(self, instance: SourceProgram, seed: int) -> InstanceRecord:
        db, program = instance.database, instance.program
        record = InstanceRecord(seed, ProgramClass.LINEAR.label)
        try:
            simple_db, simple_rules = simplify_program(db, program)
        except SimplificationError as e:
            record.note = str(e)
            return record
        original, derived = self._settle(
            lambda caps: run_chase(db, program, caps),
            lambda caps: run_chase(simple_db, simple_rules, caps),
        )
        record.characterization = original.status.value
        record.bound = derived.status.value
        record.chase_atoms = len(original)
        record.max_depth = original.max_depth
        if original.finished != derived.finished:
            record.agree = False
            record.note = f"original {original.status.value}, simplified {derived.status.value}"
            return record
        if not original.finished:
            record.note = "both chases capped"
            return record
        try:
            caps = max(original.caps, derived.caps, key=lambda c: c.max_atoms)
            partition = es_partition(db, program, caps)
        except PartitionError as e:
            record.note = str(e)
            return record
        record.agree = partition.ok
        record.note = partition.summary()
        return record

    def _settle(
        self,
        original_run: Callable[[ChaseCaps], ChaseOutcome],
        derived_run: Callable[[ChaseCaps], ChaseOutcome],
    ) -> Tuple[ChaseOutcome, ChaseOutcome]:
        """Run both chases; a chase capped while the other finished gets one rerun with scaled caps."""
        original, derived = original_run(self.caps), derived_run(self.caps)
        if original.finished != derived.finished:
            scaled = ChaseCaps.of(self.caps.max_atoms * CAP_SCALE, self.caps.max_steps * CAP_SCALE)
            if original.finished:
                derived = derived_run(scaled)
            else:
                original = original_run(scaled)
        return original, derived

    def _check_linearization(self, instance: SourceProgram, seed: int) -> InstanceRecord:
        db, program = instance.database, instance.program
        record = InstanceRecord(seed, ProgramClass.GUARDED.label)
        try:
            lin = linearize_program(db, program, self.caps)
        except LinearizationBudgetError as e:
            record.note = str(e)
            return record
        original, derived = self._settle(
            lambda caps: run_chase(db, program, caps),
            lambda caps: run_chase(lin.database, lin.program, caps),
        )
        record.characterization = original.status.value
        record.bound = derived.status.value
        record.chase_atoms = len(original)
        record.max_depth = original.max_depth
        if original.finished != derived.finished:
            record.agree = False
            record.note = f"original {original.status.value}, linearized {derived.status.value}"
            return record
        if not original.finished:
            answer = decide(db, program).answer
            record.note = f"both chases capped, decided {answer.value}"
            if answer is Answer.DIVERGES:
                record.agree = True
            return record
        partition = linearized_partition(program, lin, original, derived)
        record.agree = partition.ok
        record.note = partition.summary()
        return record

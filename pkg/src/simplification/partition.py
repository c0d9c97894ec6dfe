"""Checks that the chase and the chase of the simplified program and database agree atom by atom."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional

from ..chase.engine import ChaseCaps, ChaseOutcome, run_chase
from ..core.model import Atom, Program, atom_depth
from ..core.terms import Constant, GroundTerm, Null
from ..errors import PartitionError
from .simplify import id_tuple, parse_simplified_name, simplify_program

logger = logging.getLogger(__name__)


@dataclass
class PartitionReport:
    """Classes of derived-chase atoms per original-chase atom."""

    classes: Dict[Atom, FrozenSet[Atom]]
    depths_match: bool
    original: ChaseOutcome
    derived: ChaseOutcome
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.depths_match and not self.problems

    def summary(self) -> str:
        status = "verified" if self.ok else f"{len(self.problems)} problems"
        return (
            f"{len(self.original)} atoms vs {len(self.derived)} atoms, "
            f"{len(self.classes)} classes, depths match: {self.depths_match}, {status}"
        )


def verify_partition(
    original: ChaseOutcome,
    derived: ChaseOutcome,
    back: Callable[[Atom], Optional[Atom]],
) -> PartitionReport:
    """Group derived atoms by their back-mapped original atom and check the partition.

    back returns None when a derived atom has no counterpart. Classes are disjoint
    because back is a function; the checks are nonemptiness, cover and depth equality.
    """
    grouped: Dict[Atom, List[Atom]] = {atom: [] for atom in original.atoms}
    problems: List[str] = []
    depths_match = original.max_depth == derived.max_depth
    for atom in derived.atoms:
        source = back(atom)
        if source is None or source not in grouped:
            problems.append(f"{atom} has no equivalent atom in the original chase")
            continue
        grouped[source].append(atom)
        if atom_depth(source) != atom_depth(atom):
            depths_match = False
            problems.append(f"depth of {atom} differs from depth of {source}")
    for atom, members in grouped.items():
        if not members:
            problems.append(f"{atom} has an empty class")
    if problems:
        logger.warning(f"Partition check found {len(problems)} problems; first: {problems[0]}")
    classes = {atom: frozenset(members) for atom, members in grouped.items()}
    return PartitionReport(classes, depths_match, original, derived, problems)


class _SimplifiedTerms:
    """Maps nulls of the simplified chase to the nulls of the original chase."""

    def __init__(self, program: Program, simplified: Program, original: ChaseOutcome):
        self.program = program
        self.nulls = original.nulls
        self.simplified = simplified
        self._cache: Dict[GroundTerm, Optional[GroundTerm]] = {}

    def term(self, term: GroundTerm) -> Optional[GroundTerm]:
        if isinstance(term, Constant):
            return term
        if term not in self._cache:
            self._cache[term] = self._null(term)
        return self._cache[term]

    def _null(self, null: Null) -> Optional[GroundTerm]:
        derived = self.simplified.by_id.get(null.tgd_id)
        if derived is None or derived.provenance is None:
            return None
        spec = derived.provenance.as_dict()
        origin = self.program.by_id[derived.provenance.origin]
        images = dict(null.binding)
        binding = []
        for var in origin.frontier:
            mapped = self.term(images[spec[var].name])
            if mapped is None:
                return None
            binding.append((var.name, mapped))
        return self.nulls.lookup(origin.id, tuple(binding), null.ex_var)

    def atom(self, atom: Atom) -> Optional[Atom]:
        parsed = parse_simplified_name(atom.predicate)
        if parsed is None:
            return None
        base, ids = parsed
        if len(atom.args) != max(ids, default=0):
            return None
        args = []
        for i in ids:
            mapped = self.term(atom.args[i - 1])
            if mapped is None:
                return None
            args.append(mapped)
        if id_tuple(args) != ids:
            return None
        return Atom(base, tuple(args))


def es_partition(db: Iterable[Atom], program: Program, caps: ChaseCaps) -> PartitionReport:
    """Chase (db, program) and its simplification, and verify equivalence up to simplification.

    Raises:
        PartitionError: If either chase hits its cap.
    """
    db = frozenset(db)
    simple_db, simple_program = simplify_program(db, program)
    original = run_chase(db, program, caps)
    derived = run_chase(simple_db, simple_program, caps)
    for label, outcome in (("original", original), ("simplified", derived)):
        if not outcome.finished:
            raise PartitionError(f"the {label} chase hit the {outcome.cap_fired} cap")
    terms = _SimplifiedTerms(program, simple_program, original)
    return verify_partition(original, derived, terms.atom)

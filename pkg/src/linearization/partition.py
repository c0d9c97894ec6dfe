"""Checks that the chase and the chase of the linearized program and database agree atom by atom."""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional

from ..chase.engine import ChaseCaps, ChaseOutcome, run_chase
from ..core.model import Atom, Program
from ..core.terms import Constant, GroundTerm, Null, Term
from ..errors import PartitionError
from ..simplification.partition import PartitionReport, verify_partition
from .linearize import Linearization, linearize_program

logger = logging.getLogger(__name__)


class _TypeIndex:
    """type(alpha) lookups over a finished chase: atoms whose terms lie in alpha's."""

    def __init__(self, outcome: ChaseOutcome):
        self._by_term: Dict[Term, List[Atom]] = {}
        self._nullary: List[Atom] = []
        for atom in outcome.atoms:
            if not atom.args:
                self._nullary.append(atom)
            for arg in set(atom.args):
                self._by_term.setdefault(arg, []).append(atom)

    def type_of(self, atom: Atom) -> FrozenSet[Atom]:
        terms = set(atom.args)
        found = set(self._nullary)
        for term in terms:
            found.update(a for a in self._by_term.get(term, ()) if terms.issuperset(a.args))
        return frozenset(found)


class _LinearizedTerms:
    """Maps nulls and atoms of the linearized chase back to the original chase."""

    def __init__(self, program: Program, lin: Linearization, original: ChaseOutcome):
        self.program = program
        self.lin = lin
        self.types = _TypeIndex(original)
        self.nulls = original.nulls
        self._cache: Dict[GroundTerm, Optional[GroundTerm]] = {}

    def term(self, term: GroundTerm) -> Optional[GroundTerm]:
        if isinstance(term, Constant):
            return term
        if term not in self._cache:
            self._cache[term] = self._null(term)
        return self._cache[term]

    def _null(self, null: Null) -> Optional[GroundTerm]:
        linear = self.lin.program.by_id.get(null.tgd_id)
        if linear is None or linear.provenance is None:
            return None
        rename = linear.provenance.as_dict()
        origin = self.program.by_id[linear.provenance.origin]
        images = dict(null.binding)
        binding = []
        for var in origin.frontier:
            mapped = self.term(images[rename[var].name])
            if mapped is None:
                return None
            binding.append((var.name, mapped))
        return self.nulls.lookup(origin.id, tuple(binding), null.ex_var)

    def atom(self, atom: Atom) -> Optional[Atom]:
        sigma_type = self.lin.types.get(atom.predicate)
        if sigma_type is None or len(atom.args) != sigma_type.arity:
            return None
        terms = [self.term(arg) for arg in atom.args]
        if any(term is None for term in terms) or len(set(terms)) != len(terms):
            logger.debug(f"{atom} does not map back injectively")
            return None
        original = sigma_type.guard_atom(terms)
        if sigma_type.instantiate(terms) != self.types.type_of(original):
            logger.debug(f"type of {original} differs from the type encoded by {atom}")
            return None
        return original


def el_partition(
    db: Iterable[Atom], program: Program, caps: ChaseCaps, full_type_enum: bool = False
) -> PartitionReport:
    """Chase (db, program) and its linearization, and verify equivalence up to linearization.

    Raises:
        PartitionError: If either chase hits its cap.
    """
    db = frozenset(db)
    lin = linearize_program(db, program, caps, full_type_enum=full_type_enum)
    original = run_chase(db, program, caps)
    derived = run_chase(lin.database, lin.program, caps)
    return linearized_partition(program, lin, original, derived)


def linearized_partition(
    program: Program, lin: Linearization, original: ChaseOutcome, derived: ChaseOutcome
) -> PartitionReport:
    """Verify equivalence up to linearization on two chases that are already run.

    Raises:
        PartitionError: If either chase hit its cap.
    """
    for label, outcome in (("original", original), ("linearized", derived)):
        if not outcome.finished:
            raise PartitionError(f"the {label} chase hit the {outcome.cap_fired} cap")
    terms = _LinearizedTerms(program, lin, original)
    return verify_partition(original, derived, terms.atom)

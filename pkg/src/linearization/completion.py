"""Completion of an instance: the chase atoms over its own terms.

Two engines compute it. The chase engine runs the chase and filters, which
only works when the chase finishes within the caps. The saturation engine
computes, for every canonical type reached, the closed set of atoms the chase
derives over the guard's terms, as a least fixpoint over a table of types.
"""

import logging
from collections import deque
from typing import Deque, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..chase.engine import ChaseCaps, run_chase
from ..chase.matching import homomorphisms
from ..core.classify import ProgramClass, classify
from ..core.model import Atom, Instance, Program, TGD
from ..core.terms import Constant, Term
from ..errors import ClassError, LinearizationBudgetError
from .types import SigmaType, TypeRegistry, canonical_type, int_of, int_term, inverse

logger = logging.getLogger(__name__)


def restrict(atoms: Iterable[Atom], terms: Iterable[Term]) -> Set[Atom]:
    """Atoms whose terms all lie in terms."""
    allowed = set(terms)
    return {atom for atom in atoms if all(arg in allowed for arg in atom.args)}


def _terms(atoms: Iterable[Atom]) -> Set[Term]:
    return {arg for atom in atoms for arg in atom.args}


def require_guarded(program: Program) -> None:
    program_class = classify(program)
    if not program_class.within(ProgramClass.GUARDED):
        raise ClassError(f"this operation needs a guarded program, got {program_class.label}")


class TypeSaturator:
    """Least fixpoint of closures[type] over every type reached so far.

    closures[tau] is the set of atoms over the integers of guard(tau) that the
    chase of atoms(tau) derives; it only grows. When a closure grows, every type
    that read it is evaluated again.
    """

    def __init__(self, program: Program, registry: Optional[TypeRegistry] = None):
        require_guarded(program)
        self.program = program
        self.registry = registry if registry is not None else TypeRegistry()
        self.closures: Dict[SigmaType, FrozenSet[Atom]] = {}
        self._dependents: Dict[SigmaType, Set[SigmaType]] = {}
        self._worklist: Deque[SigmaType] = deque()
        self._queued: Set[SigmaType] = set()
        self.evaluations = 0

    # ------------------------------------------------------------------
    # Fixpoint driver
    # ------------------------------------------------------------------

    def register(self, sigma_type: SigmaType) -> None:
        if sigma_type in self.closures:
            return
        self.registry.register(sigma_type)
        self.closures[sigma_type] = sigma_type.atoms
        self._dependents[sigma_type] = set()
        self._enqueue(sigma_type)

    def _enqueue(self, sigma_type: SigmaType) -> None:
        if sigma_type not in self._queued:
            self._queued.add(sigma_type)
            self._worklist.append(sigma_type)

    def saturate(self) -> None:
        while self._worklist:
            sigma_type = self._worklist.popleft()
            self._queued.discard(sigma_type)
            self._evaluate(sigma_type)

    def closure(self, sigma_type: SigmaType) -> FrozenSet[Atom]:
        self.register(sigma_type)
        self.saturate()
        return self.closures[sigma_type]

    def _closure_for(self, child: SigmaType, parent: SigmaType) -> FrozenSet[Atom]:
        self.register(child)
        self._dependents[child].add(parent)
        return self.closures[child]

    def _evaluate(self, sigma_type: SigmaType) -> None:
        self.evaluations += 1
        current = set(self.closures[sigma_type])
        changed = True
        while changed:
            changed = False
            for tgd, hom in self._triggers(current):
                heads = self._expand(tgd, hom, current)
                local = self._local_completion(current, heads, sigma_type)
                additions = restrict(local, sigma_type.guard.args) - current
                if additions:
                    current |= additions
                    changed = True
        if current != self.closures[sigma_type]:
            self.closures[sigma_type] = frozenset(current)
            for parent in self._dependents[sigma_type]:
                self._enqueue(parent)

    # ------------------------------------------------------------------
    # One trigger inside a type
    # ------------------------------------------------------------------

    def _triggers(self, atoms: Set[Atom]) -> List[Tuple[TGD, Dict]]:
        instance = Instance(atoms)
        seen = set()
        found = []
        for tgd in self.program:
            for hom in homomorphisms(tgd.body, instance):
                key = (tgd.id, tuple(hom[var] for var in tgd.frontier))
                if key not in seen:
                    seen.add(key)
                    found.append((tgd, hom))
        return found

    def _expand(self, tgd: TGD, hom: Dict, context: Set[Atom]) -> Set[Atom]:
        """Head atoms of the trigger, existential variables mapped to fresh integers."""
        base = max([self.program.max_arity] + [int_of(arg) for arg in _terms(context)])
        mu: Dict = {var: hom[var] for var in tgd.frontier}
        for i, var in enumerate(tgd.ex_vars, start=1):
            mu[var] = int_term(base + i)
        return {atom.substitute(mu) for atom in tgd.head}

    def _local_completion(self, context: Set[Atom], heads: Set[Atom], owner: SigmaType) -> Set[Atom]:
        """Complete context + heads by instantiating the closures of atoms over fresh terms."""
        fresh = _terms(heads) - _terms(context)
        local = set(context) | heads
        changed = True
        while changed:
            changed = False
            for atom in [a for a in local if fresh.intersection(a.args)]:
                seed = restrict(local, atom.args) - {atom}
                child, rho = canonical_type(atom, seed)
                back = inverse(rho)
                closed = self._closure_for(child, owner)
                new = {a.substitute(back) for a in closed} - local
                if new:
                    local |= new
                    changed = True
        return local

    # ------------------------------------------------------------------
    # Flat completion
    # ------------------------------------------------------------------

    def type_of(self, atom: Atom, atoms: Iterable[Atom]) -> Tuple[SigmaType, Dict[Term, Constant]]:
        return canonical_type(atom, restrict(atoms, atom.args) - {atom})

    def complete(self, atoms: Iterable[Atom]) -> FrozenSet[Atom]:
        """Chase atoms over the terms of atoms."""
        current = set(atoms)
        while True:
            pending = []
            for atom in current:
                sigma_type, rho = self.type_of(atom, current)
                self.register(sigma_type)
                pending.append((sigma_type, rho))
            self.saturate()
            new: Set[Atom] = set()
            for sigma_type, rho in pending:
                back = inverse(rho)
                new.update(a.substitute(back) for a in self.closures[sigma_type])
            if new <= current:
                return frozenset(current)
            current |= new


def completion(
    inst: Iterable[Atom],
    program: Program,
    caps: Optional[ChaseCaps] = None,
    engine: str = "auto",
    saturator: Optional[TypeSaturator] = None,
) -> FrozenSet[Atom]:
    """The atoms of chase(inst, program) over the terms of inst.

    Args:
        engine: "chase" (chase and filter), "saturation", or "auto" (chase,
            falling back to saturation when a cap is hit).

    Raises:
        ClassError: If program is not guarded.
        LinearizationBudgetError: If saturation registers too many types, or the
            chase engine was forced and hit a cap.
    """
    require_guarded(program)
    atoms = frozenset(inst)
    if engine not in ("auto", "chase", "saturation"):
        raise ValueError(f"unknown completion engine {engine!r}")
    if engine in ("auto", "chase"):
        outcome = run_chase(atoms, program, caps)
        if outcome.finished:
            return frozenset(restrict(outcome.atoms, _terms(atoms)))
        if engine == "chase":
            raise LinearizationBudgetError(f"chase hit the {outcome.cap_fired} cap during completion")
        logger.info("Chase did not finish; computing the completion by type saturation")
    saturator = saturator or TypeSaturator(program)
    result = saturator.complete(atoms)
    logger.info(f"Completion by saturation: {len(result)} atoms, {len(saturator.closures)} types")
    return result

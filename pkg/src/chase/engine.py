"""The semi-oblivious chase engine.

Triggers are discovered incrementally: whenever an atom enters the instance,
every body atom it can match seeds a homomorphism search over the rest of
the body. Triggers with the same TGD and frontier image share a result, so
only the first one is queued.
"""

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Deque, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..core.model import Atom, Database, Instance, Program, TGD, atom_depth
from ..core.terms import GroundTerm, Null, NullInterner, Variable
from ..errors import ChaseConfigError
from .matching import Binding, homomorphisms, match_atom

logger = logging.getLogger(__name__)


class Strategy(Enum):
    FIFO = "fifo"
    LIFO = "lifo"
    RANDOM = "random"


class ChaseStatus(Enum):
    FINISHED = "Finished"
    CAP_EXCEEDED = "CapExceeded"


@dataclass(frozen=True)
class ChaseCaps:
    """Limits on one derivation: instance size and number of trigger applications."""

    max_atoms: int
    max_steps: int

    @classmethod
    def of(cls, max_atoms: int, max_steps: Optional[int] = None) -> "ChaseCaps":
        """Build caps; max_steps defaults to 10 x max_atoms.

        Raises:
            ChaseConfigError: If either cap is zero or negative.
        """
        if max_atoms is None or max_atoms <= 0:
            raise ChaseConfigError(f"max_atoms must be positive, got {max_atoms}")
        if max_steps is None:
            max_steps = 10 * max_atoms
        if max_steps <= 0:
            raise ChaseConfigError(f"max_steps must be positive, got {max_steps}")
        return cls(max_atoms, max_steps)


FrontierKey = Tuple[str, Tuple[GroundTerm, ...]]


@dataclass(frozen=True)
class Trigger:
    """A TGD together with a homomorphism from its body into an instance."""

    tgd: TGD
    hom: Tuple[Tuple[Variable, GroundTerm], ...]

    @classmethod
    def of(cls, tgd: TGD, hom: Binding) -> "Trigger":
        return cls(tgd, tuple((var, hom[var]) for var in tgd.body_variables))

    @property
    def mapping(self) -> Binding:
        return dict(self.hom)

    @property
    def key(self) -> FrontierKey:
        mapping = self.mapping
        return (self.tgd.id, tuple(mapping[var] for var in self.tgd.frontier))

    def result(self, nulls: Optional[NullInterner] = None) -> Tuple[Atom, ...]:
        return result_of_trigger(self.tgd, self.mapping, nulls)

    def __str__(self) -> str:
        inner = ", ".join(f"{var}->{term}" for var, term in self.hom)
        return f"({self.tgd.id}, {{{inner}}})"


def result_of_trigger(tgd: TGD, hom: Binding, nulls: Optional[NullInterner] = None) -> Tuple[Atom, ...]:
    """Instantiate the head of tgd under hom, inventing one null per existential variable.

    Within one interner the nulls depend only on the TGD and the frontier restriction
    of hom. Without an interner the nulls are fresh.
    """
    nulls = nulls if nulls is not None else NullInterner()
    binding = tuple((var.name, hom[var]) for var in tgd.frontier)
    mu: Dict[Variable, GroundTerm] = {var: hom[var] for var in tgd.frontier}
    for var in tgd.ex_vars:
        mu[var] = nulls.intern(tgd.id, binding, var.name)
    return tuple(dict.fromkeys(atom.substitute(mu) for atom in tgd.head))


@dataclass
class ChaseOutcome:
    """Result of one (possibly capped) chase derivation."""

    status: ChaseStatus
    atoms: Tuple[Atom, ...]
    steps: int
    max_depth: int
    log: List[Trigger]
    # produced atom -> image of its TGD's forest parent atom
    forest: Dict[Atom, Atom]
    database: Database
    program: Program
    caps: ChaseCaps
    cap_fired: Optional[str] = None
    strategy: Strategy = Strategy.FIFO
    # the nulls this derivation invented
    nulls: NullInterner = field(default_factory=NullInterner, repr=False)
    _instance: Optional[frozenset] = field(default=None, repr=False)

    @property
    def finished(self) -> bool:
        return self.status is ChaseStatus.FINISHED

    @property
    def instance(self) -> frozenset:
        if self._instance is None:
            self._instance = frozenset(self.atoms)
        return self._instance

    def __len__(self) -> int:
        return len(self.atoms)

    def canonical(self) -> FrozenSet[str]:
        """The atoms with nulls written by their derivation, equal across runs up to null renaming."""
        return frozenset(
            f"{atom.predicate}({','.join(_canonical_term(arg) for arg in atom.args)})" for atom in self.atoms
        )

    def stats(self) -> Dict[str, int]:
        return {"atoms": len(self.atoms), "maxdepth": self.max_depth, "steps": self.steps}

    def forest_edges(self) -> List[Tuple[Atom, Atom]]:
        """(parent, child) pairs in production order."""
        return [(parent, child) for child, parent in self.forest.items()]

    def cap_report(self) -> Dict[str, object]:
        return {
            "fired": self.cap_fired,
            "maxAtoms": self.caps.max_atoms,
            "maxSteps": self.caps.max_steps,
        }


def _canonical_term(term: GroundTerm) -> str:
    return term.structured() if isinstance(term, Null) else str(term)


class _Agenda:
    """Pending triggers ordered by the derivation strategy."""

    def __init__(self, strategy: Strategy, seed: Optional[int]):
        self.strategy = strategy
        self._queue: Deque[Trigger] = deque()
        self._rng = random.Random(seed)

    def push(self, trigger: Trigger) -> None:
        self._queue.append(trigger)

    def pop(self) -> Trigger:
        if self.strategy is Strategy.FIFO:
            return self._queue.popleft()
        if self.strategy is Strategy.LIFO:
            return self._queue.pop()
        index = self._rng.randrange(len(self._queue))
        self._queue[index], self._queue[-1] = self._queue[-1], self._queue[index]
        return self._queue.pop()

    def __bool__(self) -> bool:
        return bool(self._queue)


class _Derivation:
    def __init__(self, program: Program, strategy: Strategy, seed: Optional[int]):
        self.program = program
        self.instance = Instance()
        self.nulls = NullInterner()
        self.agenda = _Agenda(strategy, seed)
        self.seen: Set[FrontierKey] = set()
        self.max_depth = 0
        # predicate -> [(tgd, body index)]
        self.by_predicate: Dict[str, List[Tuple[TGD, int]]] = {}
        for tgd in program:
            for index, atom in enumerate(tgd.body):
                self.by_predicate.setdefault(atom.predicate, []).append((tgd, index))

    def add(self, atoms: Iterable[Atom]) -> List[Atom]:
        added = [atom for atom in atoms if self.instance.add(atom)]
        for atom in added:
            self.max_depth = max(self.max_depth, atom_depth(atom))
        for atom in added:
            self._discover(atom)
        return added

    def _discover(self, atom: Atom) -> None:
        for tgd, index in self.by_predicate.get(atom.predicate, ()):
            start = match_atom(tgd.body[index], atom, {})
            if start is None:
                continue
            rest = tgd.body[:index] + tgd.body[index + 1 :]
            for hom in homomorphisms(rest, self.instance, start):
                trigger = Trigger.of(tgd, hom)
                key = trigger.key
                if key not in self.seen:
                    self.seen.add(key)
                    self.agenda.push(trigger)


def run_chase(
    db: Iterable[Atom],
    program: Program,
    caps: Optional[ChaseCaps] = None,
    strategy: Strategy = Strategy.FIFO,
    seed: Optional[int] = None,
    depth_limit: Optional[int] = None,
) -> ChaseOutcome:
    """Run the semi-oblivious chase of db with program.

    Args:
        db: Database facts (constants only).
        program: The TGDs.
        caps: Atom and step caps; Config.chase_caps() when omitted.
        strategy: Order in which pending triggers are applied.
        seed: Seed for Strategy.RANDOM.
        depth_limit: Stop as soon as an atom deeper than this appears.

    Returns:
        ChaseOutcome. Finished means no active trigger remains.

    Raises:
        ChaseConfigError: If caps are not positive.
        ValueError: If a database atom is not all-constant.
    """
    if caps is None:
        from ..config import Config

        caps = Config.chase_caps()
    if caps.max_atoms <= 0 or caps.max_steps <= 0:
        raise ChaseConfigError(f"caps must be positive, got {caps}")

    facts = tuple(dict.fromkeys(db))
    for fact in facts:
        if not fact.is_fact():
            raise ValueError(f"database atom {fact} is not all-constant")

    derivation = _Derivation(program, strategy, seed)
    derivation.add(facts)
    log: List[Trigger] = []
    forest: Dict[Atom, Atom] = {}
    cap_fired: Optional[str] = None
    if len(derivation.instance) > caps.max_atoms:
        cap_fired = "atoms"

    while cap_fired is None and derivation.agenda:
        trigger = derivation.agenda.pop()
        result = trigger.result(derivation.nulls)
        if all(atom in derivation.instance for atom in result):
            continue
        if len(log) >= caps.max_steps:
            cap_fired = "steps"
            break
        mapping = trigger.mapping
        parent = trigger.tgd.forest_parent.substitute(mapping)
        added = derivation.add(result)
        log.append(trigger)
        for atom in added:
            forest[atom] = parent
        logger.debug(f"Applied {trigger}, added {len(added)} atoms")
        if len(derivation.instance) > caps.max_atoms:
            cap_fired = "atoms"
        elif depth_limit is not None and derivation.max_depth > depth_limit:
            cap_fired = "depth"

    status = ChaseStatus.FINISHED if cap_fired is None else ChaseStatus.CAP_EXCEEDED
    outcome = ChaseOutcome(
        status=status,
        atoms=tuple(derivation.instance.atoms),
        steps=len(log),
        max_depth=derivation.max_depth,
        log=log,
        forest=forest,
        database=frozenset(facts),
        program=program,
        caps=caps,
        cap_fired=cap_fired,
        strategy=strategy,
        nulls=derivation.nulls,
    )
    if cap_fired:
        logger.info(
            f"Chase stopped at the {cap_fired} cap: {len(outcome)} atoms, {outcome.steps} steps"
        )
    else:
        logger.info(
            f"Chase finished: {len(outcome)} atoms, {outcome.steps} steps, maxdepth {outcome.max_depth}"
        )
    return outcome


def find_active_trigger(atoms: Iterable[Atom], program: Program) -> Optional[Trigger]:
    """Exhaustively search for an active trigger on atoms (None if the instance is a model)."""
    instance = Instance(atoms)
    for tgd in program:
        for hom in homomorphisms(tgd.body, instance):
            trigger = Trigger.of(tgd, hom)
            if not all(atom in instance for atom in trigger.result()):
                return trigger
    return None

"""Types: a canonical guard shape over the integers 1..k plus side atoms."""

import hashlib
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from ..core.model import Atom
from ..core.terms import Constant, GroundTerm, Term
from ..errors import LinearizationBudgetError

logger = logging.getLogger(__name__)


def int_term(i: int) -> Constant:
    return Constant(str(i))


def int_of(term: Term) -> int:
    return int(term.name)


@dataclass(frozen=True)
class SigmaType:
    """(guard, side): guard over 1..k in first-occurrence order, side atoms over the same integers."""

    guard: Atom
    side: FrozenSet[Atom]

    @cached_property
    def atoms(self) -> FrozenSet[Atom]:
        return self.side | {self.guard}

    @property
    def arity(self) -> int:
        """Number of distinct integers of the guard (the arity of [tau])."""
        return len(set(self.guard.args))

    @cached_property
    def text(self) -> str:
        side = ", ".join(sorted(str(atom) for atom in self.side))
        return f"({self.guard}, {{{side}}})"

    @cached_property
    def digest(self) -> str:
        return hashlib.sha1(self.text.encode("utf-8")).hexdigest()[:10]

    @property
    def name(self) -> str:
        return f"[tau#{self.digest}]"

    def instantiate(self, terms: Sequence[GroundTerm]) -> FrozenSet[Atom]:
        """tau(terms): replace integer i by terms[i-1]."""
        if len(terms) != self.arity:
            raise ValueError(f"{self.name} has arity {self.arity}, got {len(terms)} terms")
        mapping = {int_term(i): term for i, term in enumerate(terms, start=1)}
        return frozenset(atom.substitute(mapping) for atom in self.atoms)

    def guard_atom(self, terms: Sequence[GroundTerm]) -> Atom:
        mapping = {int_term(i): term for i, term in enumerate(terms, start=1)}
        return self.guard.substitute(mapping)

    def as_dict(self) -> Dict[str, object]:
        return {"guard": str(self.guard), "side": sorted(str(atom) for atom in self.side)}

    def __str__(self) -> str:
        return self.text


Renaming = Dict[Term, Constant]


def canonical_type(guard: Atom, side: Iterable[Atom]) -> Tuple[SigmaType, Renaming]:
    """Relabel guard terms to 1, 2, ... in first-occurrence order, side atoms consistently.

    Returns the type and the renaming used.

    Raises:
        ValueError: If a side atom mentions a term outside the guard.
    """
    rho: Renaming = {}
    for arg in guard.args:
        if arg not in rho:
            rho[arg] = int_term(len(rho) + 1)
    canonical_guard = guard.substitute(rho)
    canonical_side = set()
    for atom in side:
        for arg in atom.args:
            if arg not in rho:
                raise ValueError(f"side atom {atom} mentions {arg}, which is not a term of {guard}")
        canonical_side.add(atom.substitute(rho))
    canonical_side.discard(canonical_guard)
    return SigmaType(canonical_guard, frozenset(canonical_side)), rho


def inverse(rho: Mapping[Term, Constant]) -> Dict[Constant, Term]:
    return {value: key for key, value in rho.items()}


def guard_shapes(predicate: str, arity: int) -> Iterator[Atom]:
    """Every canonical guard R(t1..tn) with t1 = 1 and ti <= max(t1..t_{i-1}) + 1."""

    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == arity:
            yield prefix
            return
        top = max(prefix, default=0)
        for value in range(1, top + 2):
            yield from extend(prefix + (value,))

    for shape in extend(()):
        yield Atom(predicate, tuple(int_term(i) for i in shape))


class TypeRegistry:
    """Name -> type table with a budget on the number of registered types."""

    def __init__(self, budget: Optional[int] = None):
        if budget is None:
            from ..config import Config

            budget = Config.TYPE_BUDGET
        self.budget = budget
        self._types: Dict[str, SigmaType] = {}

    def register(self, sigma_type: SigmaType) -> bool:
        """Add a type; returns False if it was known.

        Raises:
            LinearizationBudgetError: If the budget would be exceeded.
        """
        if sigma_type.name in self._types:
            return False
        if len(self._types) >= self.budget:
            raise LinearizationBudgetError(
                f"more than {self.budget} types; raise CHASEGATE_TYPE_BUDGET or shrink the program"
            )
        self._types[sigma_type.name] = sigma_type
        return True

    def __contains__(self, sigma_type: SigmaType) -> bool:
        return sigma_type.name in self._types

    def __len__(self) -> int:
        return len(self._types)

    def __iter__(self) -> Iterator[SigmaType]:
        return iter(self._types.values())

    def get(self, name: str) -> Optional[SigmaType]:
        return self._types.get(name)

    def sidecar(self, names: Optional[Iterable[str]] = None) -> Dict[str, Dict[str, object]]:
        """JSON-ready table from predicate names to (guard, side)."""
        selected = sorted(names) if names is not None else sorted(self._types)
        return {name: self._types[name].as_dict() for name in selected if name in self._types}

    def sidecar_json(self, names: Optional[Iterable[str]] = None) -> str:
        return json.dumps(self.sidecar(names), indent=2, ensure_ascii=False)

"""Atoms, TGDs, programs and instances."""

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .terms import Constant, GroundTerm, Null, Term, Variable, term_depth


@dataclass(frozen=True, slots=True)
class Atom:
    """A predicate applied to an ordered tuple of terms."""

    predicate: str
    args: Tuple[Term, ...]

    @property
    def arity(self) -> int:
        return len(self.args)

    def terms(self) -> FrozenSet[Term]:
        return frozenset(self.args)

    def variables(self) -> Tuple[Variable, ...]:
        """Distinct variables in first-occurrence order."""
        seen: Dict[Variable, None] = {}
        for arg in self.args:
            if isinstance(arg, Variable):
                seen.setdefault(arg, None)
        return tuple(seen)

    def is_fact(self) -> bool:
        return all(isinstance(arg, Constant) for arg in self.args)

    def is_ground(self) -> bool:
        return not any(isinstance(arg, Variable) for arg in self.args)

    def substitute(self, mapping: Mapping[Term, Term]) -> "Atom":
        return Atom(self.predicate, tuple(mapping.get(arg, arg) for arg in self.args))

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(str(arg) for arg in self.args)})"


def atom_depth(atom: Atom) -> int:
    """Maximum term depth over the arguments of a ground atom."""
    return max((term_depth(arg) for arg in atom.args), default=0)


def unique_terms(args: Sequence[Term]) -> Tuple[Term, ...]:
    """Keep only the first occurrence of each term."""
    return tuple(dict.fromkeys(args))


def active_domain(atoms: Iterable[Atom]) -> FrozenSet[Term]:
    domain: Set[Term] = set()
    for atom in atoms:
        domain.update(atom.args)
    return frozenset(domain)


@dataclass(frozen=True)
class Provenance:
    """Where a derived TGD came from: the originating TGD and its variable map."""

    origin: str
    mapping: Tuple[Tuple[Variable, Variable], ...]
    kind: str = "simplification"
    note: str = ""

    def as_dict(self) -> Dict[Variable, Variable]:
        return dict(self.mapping)


@dataclass(frozen=True)
class TGD:
    """body -> exists ex_vars: head, over variables only."""

    id: str
    body: Tuple[Atom, ...]
    head: Tuple[Atom, ...]
    provenance: Optional[Provenance] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.body or not self.head:
            raise ValueError(f"TGD {self.id} needs a nonempty body and head")
        for atom in self.body + self.head:
            for arg in atom.args:
                if not isinstance(arg, Variable):
                    raise ValueError(f"TGD {self.id} contains non-variable term {arg} in {atom}")

    @cached_property
    def body_variables(self) -> Tuple[Variable, ...]:
        return _ordered_variables(self.body)

    @cached_property
    def head_variables(self) -> Tuple[Variable, ...]:
        return _ordered_variables(self.head)

    @cached_property
    def frontier(self) -> Tuple[Variable, ...]:
        """Variables in both body and head, in body first-occurrence order."""
        head = set(self.head_variables)
        return tuple(var for var in self.body_variables if var in head)

    @cached_property
    def ex_vars(self) -> Tuple[Variable, ...]:
        body = set(self.body_variables)
        return tuple(var for var in self.head_variables if var not in body)

    @cached_property
    def guard(self) -> Optional[Atom]:
        """Leftmost body atom containing every body variable, if any."""
        needed = set(self.body_variables)
        for atom in self.body:
            if needed <= set(atom.args):
                return atom
        return None

    @cached_property
    def forest_parent(self) -> Atom:
        """Guard, or the leftmost body atom with the most distinct variables."""
        if self.guard is not None:
            return self.guard
        return max(self.body, key=lambda atom: (len(atom.variables()), -self.body.index(atom)))

    def atoms(self) -> Tuple[Atom, ...]:
        return self.body + self.head

    def __str__(self) -> str:
        body = ", ".join(str(atom) for atom in self.body)
        head = ", ".join(str(atom) for atom in self.head)
        exists = f"exists {','.join(str(v) for v in self.ex_vars)}: " if self.ex_vars else ""
        return f"{body} -> {exists}{head}"


def _ordered_variables(atoms: Iterable[Atom]) -> Tuple[Variable, ...]:
    seen: Dict[Variable, None] = {}
    for atom in atoms:
        for arg in atom.args:
            if isinstance(arg, Variable):
                seen.setdefault(arg, None)
    return tuple(seen)


def rename_apart(tgds: Iterable[TGD]) -> Tuple[List[TGD], Dict[str, Dict[str, str]]]:
    """Rename variables already used by an earlier TGD to fresh NAME_k names.

    Returns the TGDs and, per renamed TGD id, {new name: old name}. Provenance
    maps follow the renaming.
    """
    tgds = list(tgds)
    taken: Set[str] = {var.name for tgd in tgds for var in tgd.body_variables + tgd.ex_vars}
    next_suffix: Dict[str, int] = {}
    used: Set[str] = set()
    result: List[TGD] = []
    renamed: Dict[str, Dict[str, str]] = {}
    for tgd in tgds:
        names = {var.name for var in tgd.body_variables + tgd.ex_vars}
        mapping: Dict[Variable, Variable] = {}
        for name in sorted(names & used):
            k = next_suffix.get(name, 2)
            while f"{name}_{k}" in taken:
                k += 1
            next_suffix[name] = k + 1
            taken.add(f"{name}_{k}")
            mapping[Variable(name)] = Variable(f"{name}_{k}")
        used.update(mapping.get(Variable(name), Variable(name)).name for name in names)
        if mapping:
            renamed[tgd.id] = {new.name: old.name for old, new in mapping.items()}
            tgd = _substitute_tgd(tgd, mapping)
        result.append(tgd)
    return result, renamed


def _substitute_tgd(tgd: TGD, mapping: Mapping[Variable, Variable]) -> TGD:
    provenance = tgd.provenance
    if provenance is not None:
        images = tuple((origin, mapping.get(image, image)) for origin, image in provenance.mapping)
        provenance = replace(provenance, mapping=images)
    return TGD(
        tgd.id,
        tuple(atom.substitute(mapping) for atom in tgd.body),
        tuple(atom.substitute(mapping) for atom in tgd.head),
        provenance,
    )


class Program:
    """An ordered set of TGDs with derived schema metrics.

    No two TGDs share a variable: colliding variables are renamed apart on construction.
    """

    def __init__(self, tgds: Iterable[TGD], extra_schema: Optional[Mapping[str, int]] = None):
        renamed_tgds, self.renamed = rename_apart(tgds)
        self.tgds: Tuple[TGD, ...] = tuple(renamed_tgds)
        self.by_id: Dict[str, TGD] = {}
        schema: Dict[str, int] = dict(extra_schema or {})
        for tgd in self.tgds:
            if tgd.id in self.by_id:
                raise ValueError(f"duplicate TGD id {tgd.id}")
            self.by_id[tgd.id] = tgd
            for atom in tgd.atoms():
                known = schema.setdefault(atom.predicate, atom.arity)
                if known != atom.arity:
                    raise ValueError(
                        f"predicate {atom.predicate} used with arities {known} and {atom.arity}"
                    )
        self.schema: Dict[str, int] = schema

    def __iter__(self) -> Iterator[TGD]:
        return iter(self.tgds)

    def __len__(self) -> int:
        return len(self.tgds)

    def __eq__(self, other) -> bool:
        return isinstance(other, Program) and self.tgds == other.tgds

    def __hash__(self) -> int:
        return hash(self.tgds)

    @cached_property
    def atom_count(self) -> int:
        """The number of distinct atoms occurring in the TGDs."""
        return len({atom for tgd in self.tgds for atom in tgd.atoms()})

    @property
    def pred_count(self) -> int:
        return len(self.schema)

    @property
    def max_arity(self) -> int:
        return max(self.schema.values(), default=0)

    @property
    def norm(self) -> int:
        return self.atom_count * self.pred_count * self.max_arity

    def body_predicates(self) -> Set[str]:
        return {atom.predicate for tgd in self.tgds for atom in tgd.body}


Database = FrozenSet[Atom]


class Instance:
    """Mutable set of ground atoms in insertion order, indexed for matching."""

    def __init__(self, atoms: Iterable[Atom] = ()):
        self.atoms: List[Atom] = []
        self._members: Set[Atom] = set()
        self._by_predicate: Dict[str, List[Atom]] = {}
        self._by_position: Dict[Tuple[str, int, Term], List[Atom]] = {}
        for atom in atoms:
            self.add(atom)

    def add(self, atom: Atom) -> bool:
        """Add atom; returns False if it was already present."""
        if atom in self._members:
            return False
        if not atom.is_ground():
            raise ValueError(f"instances hold ground atoms only, got {atom}")
        self._members.add(atom)
        self.atoms.append(atom)
        self._by_predicate.setdefault(atom.predicate, []).append(atom)
        for index, arg in enumerate(atom.args):
            self._by_position.setdefault((atom.predicate, index, arg), []).append(atom)
        return True

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._members

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def with_predicate(self, predicate: str) -> List[Atom]:
        return self._by_predicate.get(predicate, [])

    def candidates(self, pattern: Atom, binding: Mapping[Variable, GroundTerm]) -> List[Atom]:
        """Atoms that may match pattern under binding, using the most selective index."""
        best = self._by_predicate.get(pattern.predicate, [])
        for index, arg in enumerate(pattern.args):
            if isinstance(arg, Variable):
                value = binding.get(arg)
                if value is None:
                    continue
            else:
                value = arg
            hits = self._by_position.get((pattern.predicate, index, value), [])
            if len(hits) < len(best):
                best = hits
                if not best:
                    break
        return best

    def frozen(self) -> FrozenSet[Atom]:
        return frozenset(self._members)

    def active_domain(self) -> FrozenSet[Term]:
        return active_domain(self.atoms)

    def max_depth(self) -> int:
        return max((atom_depth(atom) for atom in self.atoms), default=0)

    def nulls(self) -> FrozenSet[Null]:
        return frozenset(arg for arg in self.active_domain() if isinstance(arg, Null))

"""Guarded to linear transformation over type predicates [tau]."""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Deque, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..chase.engine import ChaseCaps
from ..chase.matching import match_atom
from ..core.model import Atom, Database, Program, Provenance, TGD, unique_terms
from ..core.terms import Constant, Variable
from ..errors import LinearizationBudgetError
from .completion import TypeSaturator, completion, require_guarded, restrict
from .types import SigmaType, TypeRegistry, canonical_type, guard_shapes, int_of, int_term

logger = logging.getLogger(__name__)


@dataclass
class Linearization:
    """Linearized database and rules, plus the types their predicates stand for."""

    database: Database
    program: Program
    registry: TypeRegistry
    types: Dict[str, SigmaType] = field(default_factory=dict)

    def sidecar(self) -> Dict[str, Dict[str, object]]:
        return {name: self.types[name].as_dict() for name in sorted(self.types)}


def type_atom(sigma_type: SigmaType, args: Iterable) -> Atom:
    return Atom(sigma_type.name, tuple(args))


def linearize_database(
    db: Iterable[Atom],
    program: Program,
    caps: Optional[ChaseCaps] = None,
    saturator: Optional[TypeSaturator] = None,
    engine: str = "saturation",
) -> Tuple[Database, Dict[Atom, SigmaType]]:
    """One type atom per fact, over the fact's distinct terms, named after its canonical type.

    The type of a fact is the completion of db restricted to the fact's terms.
    """
    facts = frozenset(db)
    complete = completion(facts, program, caps, engine=engine, saturator=saturator)
    result: Set[Atom] = set()
    fact_types: Dict[Atom, SigmaType] = {}
    for fact in sorted(facts, key=str):
        sigma_type, _ = canonical_type(fact, restrict(complete, fact.args) - {fact})
        fact_types[fact] = sigma_type
        result.add(type_atom(sigma_type, unique_terms(fact.args)))
    return frozenset(result), fact_types


def _first_variables(guard: Atom, hom: Dict[Variable, Constant]) -> Dict[Variable, Variable]:
    """Rename every body variable to the first guard variable sharing its integer."""
    first: Dict[Constant, Variable] = {}
    for arg in guard.args:
        first.setdefault(hom[arg], arg)
    return {var: first[image] for var, image in hom.items()}


def linearize_tgd(
    tgd: TGD, sigma_type: SigmaType, saturator: TypeSaturator
) -> Optional[Tuple[TGD, List[SigmaType]]]:
    """The linearization of tgd induced by sigma_type, or None if the body does not fit.

    The homomorphism is forced by mapping guard(tgd) onto guard(sigma_type).
    Returns the linear TGD and the child types of its head atoms.
    """
    guard = tgd.guard
    if guard is None:
        return None
    hom = match_atom(guard, sigma_type.guard, {})
    if hom is None:
        return None
    atoms = sigma_type.atoms
    if any(atom.substitute(hom) not in atoms for atom in tgd.body):
        return None

    arity = saturator.program.max_arity
    f: Dict[Variable, Constant] = {var: hom[var] for var in tgd.frontier}
    for i, var in enumerate(tgd.ex_vars, start=1):
        f[var] = int_term(arity + i)
    images = [atom.substitute(f) for atom in tgd.head]
    complete = saturator.complete(set(images) | atoms)

    rename = _first_variables(guard, hom)
    body_args = tuple(dict.fromkeys(rename[arg] for arg in guard.args))
    head: List[Atom] = []
    children: List[SigmaType] = []
    for atom, image in zip(tgd.head, images):
        child, _ = canonical_type(image, restrict(complete, image.args) - {image})
        children.append(child)
        args = unique_terms([rename.get(arg, arg) for arg in atom.args])
        head.append(type_atom(child, args))
    linear = TGD(
        f"{tgd.id}#{sigma_type.digest}",
        (type_atom(sigma_type, body_args),),
        tuple(dict.fromkeys(head)),
        Provenance(tgd.id, tuple(rename.items()), kind="linearization", note=sigma_type.name),
    )
    return linear, children


def all_types(program: Program, registry: TypeRegistry) -> List[SigmaType]:
    """Every type over the program's schema: each guard shape with each side set."""
    schema = program.schema
    found: List[SigmaType] = []
    for predicate in sorted(schema):
        for guard in guard_shapes(predicate, schema[predicate]):
            ints = sorted(set(guard.args), key=int_of)
            base = [
                Atom(name, tuple(args))
                for name in sorted(schema)
                for args in _tuples(ints, schema[name])
                if Atom(name, tuple(args)) != guard
            ]
            if len(registry) + len(found) + 2 ** len(base) > registry.budget:
                raise LinearizationBudgetError(
                    f"full type enumeration needs more than {registry.budget} types"
                )
            for size in range(len(base) + 1):
                for side in combinations(base, size):
                    found.append(SigmaType(guard, frozenset(side)))
    return found


def _tuples(values: List[Constant], length: int) -> List[Tuple[Constant, ...]]:
    result: List[Tuple[Constant, ...]] = [()]
    for _ in range(length):
        result = [prefix + (value,) for prefix in result for value in values]
    return result


def linearize_program(
    db: Iterable[Atom],
    program: Program,
    caps: Optional[ChaseCaps] = None,
    full_type_enum: bool = False,
    budget: Optional[int] = None,
) -> Linearization:
    """Linearize a guarded program together with its database.

    By default the rules are the linearizations induced by the types of the
    linearized facts and every type reachable from them through linearized heads.
    full_type_enum induces them from every type over the schema instead.

    Raises:
        ClassError: If program is not guarded.
        LinearizationBudgetError: If more types than the budget are needed.
    """
    require_guarded(program)
    registry = TypeRegistry(budget)
    saturator = TypeSaturator(program, registry)
    lin_db, fact_types = linearize_database(db, program, caps, saturator)

    types: Dict[str, SigmaType] = {}
    worklist: Deque[SigmaType] = deque()

    def reach(sigma_type: SigmaType) -> None:
        if sigma_type.name not in types:
            types[sigma_type.name] = sigma_type
            worklist.append(sigma_type)

    for sigma_type in fact_types.values():
        reach(sigma_type)
    if full_type_enum:
        for sigma_type in all_types(program, registry):
            reach(sigma_type)

    tgds: Dict[str, TGD] = {}
    while worklist:
        sigma_type = worklist.popleft()
        for tgd in program:
            linearized = linearize_tgd(tgd, sigma_type, saturator)
            if linearized is None:
                continue
            linear, children = linearized
            tgds.setdefault(linear.id, linear)
            for child in children:
                reach(child)

    ordered = sorted(tgds.values(), key=lambda tgd: tgd.id)
    extra = {name: sigma_type.arity for name, sigma_type in types.items()}
    lin_program = Program(ordered, extra_schema=extra)
    logger.info(
        f"Linearized {len(program)} TGDs into {len(ordered)} over {len(types)} types "
        f"({len(saturator.closures)} types saturated)"
    )
    return Linearization(lin_db, lin_program, registry, types)

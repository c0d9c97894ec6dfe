"""Linear to simple-linear transformation.

An atom R(t1..tn) becomes R_{(i1..in)}(unique(t)), where i_k identifies the
first occurrence of t_k. A linear TGD is split into one simple-linear TGD per
specialization of its distinct body variables.
"""

import logging
import re
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..core.classify import ProgramClass, classify
from ..core.model import Atom, Database, Program, Provenance, TGD, unique_terms
from ..core.terms import Term, Variable
from ..errors import ClassError, SimplificationError

logger = logging.getLogger(__name__)

_SIMPLIFIED_NAME = re.compile(r"^(.*)_\{\(([\d,]+)\)\}$")

Specialization = Dict[Variable, Variable]


def id_tuple(args: Sequence[Term]) -> Tuple[int, ...]:
    """Position identifiers: (x,y,x,z,y) -> (1,2,1,3,2)."""
    first: Dict[Term, int] = {}
    for arg in args:
        first.setdefault(arg, len(first) + 1)
    return tuple(first[arg] for arg in args)


def simplified_name(predicate: str, ids: Sequence[int]) -> str:
    return f"{predicate}_{{({','.join(str(i) for i in ids)})}}"


def parse_simplified_name(name: str) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Split R_{(1,2,1)} into ('R', (1,2,1)); None for other names."""
    match = _SIMPLIFIED_NAME.match(name)
    if not match:
        return None
    return match.group(1), tuple(int(part) for part in match.group(2).split(","))


def simplify_atom(atom: Atom) -> Atom:
    return Atom(simplified_name(atom.predicate, id_tuple(atom.args)), unique_terms(atom.args))


def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def specializations(variables: Sequence[Variable], arity_cap: Optional[int] = None) -> List[Specialization]:
    """All f with f(x1) = x1 and f(xi) in {f(x1), ..., f(x_{i-1}), xi}.

    The identity comes first. There are Bell(len(variables)) of them.

    Raises:
        SimplificationError: If more variables than arity_cap are given.
    """
    if arity_cap is None:
        from ..config import Config

        arity_cap = Config.ARITY_CAP
    if len(set(variables)) != len(variables):
        raise ValueError("specializations need distinct variables")
    if len(variables) > arity_cap:
        raise SimplificationError(
            f"{len(variables)} body variables exceed the arity cap {arity_cap} "
            f"({bell_number(len(variables))} specializations)"
        )
    return list(_specializations(list(variables), {}))


def _specializations(remaining: List[Variable], partial: Specialization) -> Iterator[Specialization]:
    if not remaining:
        yield dict(partial)
        return
    var, rest = remaining[0], remaining[1:]
    images = [var] + list(dict.fromkeys(partial.values()))
    for image in images:
        partial[var] = image
        yield from _specializations(rest, partial)
        del partial[var]


def simplify_tgd(tgd: TGD, arity_cap: Optional[int] = None) -> List[TGD]:
    """One simple-linear TGD per specialization of the body variables."""
    if len(tgd.body) != 1:
        raise ClassError(f"TGD {tgd.id} is not linear")
    result: List[TGD] = []
    for k, spec in enumerate(specializations(tgd.body_variables, arity_cap), start=1):
        body = simplify_atom(tgd.body[0].substitute(spec))
        head = tuple(dict.fromkeys(simplify_atom(atom.substitute(spec)) for atom in tgd.head))
        result.append(
            TGD(
                f"{tgd.id}.s{k}",
                (body,),
                head,
                Provenance(tgd.id, tuple(spec.items()), kind="simplification"),
            )
        )
    return result


def simplify_rules(program: Program, arity_cap: Optional[int] = None) -> Program:
    """Simplify every TGD of a linear program.

    Raises:
        ClassError: If program is not linear.
        SimplificationError: If a TGD has more body variables than the cap.
    """
    program_class = classify(program)
    if not program_class.within(ProgramClass.LINEAR):
        raise ClassError(f"simplification needs a linear program, got {program_class.label}")
    tgds = [derived for tgd in program for derived in simplify_tgd(tgd, arity_cap)]
    logger.info(f"Simplified {len(program)} TGDs into {len(tgds)}")
    return Program(tgds)


def simplify_database(db: Iterable[Atom]) -> Database:
    return frozenset(simplify_atom(atom) for atom in db)


def simplify_program(
    db: Iterable[Atom], program: Program, arity_cap: Optional[int] = None
) -> Tuple[Database, Program]:
    """Simplified database and rules."""
    return simplify_database(db), simplify_rules(program, arity_cap)

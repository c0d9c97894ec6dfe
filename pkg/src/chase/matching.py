"""Backtracking homomorphism search from rule bodies into instances."""

from typing import Dict, Iterator, List, Mapping, Optional, Sequence

from ..core.model import Atom, Instance
from ..core.terms import GroundTerm, Variable

Binding = Dict[Variable, GroundTerm]


def match_atom(pattern: Atom, target: Atom, binding: Mapping[Variable, GroundTerm]) -> Optional[Binding]:
    """Extend binding so that pattern maps onto target, or return None."""
    if pattern.predicate != target.predicate or len(pattern.args) != len(target.args):
        return None
    extended = dict(binding)
    for arg, value in zip(pattern.args, target.args):
        if isinstance(arg, Variable):
            bound = extended.get(arg)
            if bound is None:
                extended[arg] = value
            elif bound != value:
                return None
        elif arg != value:
            return None
    return extended


def _bound_count(atom: Atom, binding: Mapping[Variable, GroundTerm]) -> int:
    return sum(1 for arg in atom.args if not isinstance(arg, Variable) or arg in binding)


def homomorphisms(
    atoms: Sequence[Atom],
    instance: Instance,
    binding: Optional[Mapping[Variable, GroundTerm]] = None,
) -> Iterator[Binding]:
    """Yield every extension of binding mapping all atoms into instance.

    The next atom to match is always the one with the most bound arguments.
    The instance must not grow while the generator is being consumed.
    """
    remaining: List[Atom] = list(atoms)
    yield from _search(remaining, instance, dict(binding or {}))


def _search(remaining: List[Atom], instance: Instance, binding: Binding) -> Iterator[Binding]:
    if not remaining:
        yield binding
        return
    index = max(range(len(remaining)), key=lambda i: _bound_count(remaining[i], binding))
    pattern = remaining[index]
    rest = remaining[:index] + remaining[index + 1 :]
    for candidate in instance.candidates(pattern, binding):
        extended = match_atom(pattern, candidate, binding)
        if extended is not None:
            yield from _search(rest, instance, extended)


def find_homomorphism(atoms: Sequence[Atom], instance: Instance, binding=None) -> Optional[Binding]:
    return next(homomorphisms(atoms, instance, binding), None)

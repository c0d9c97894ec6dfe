"""Guarded chase forest: trees rooted at database atoms, levels by term depth."""

from collections import Counter
from typing import Dict, List

from ..core.classify import ProgramClass, classify
from ..core.model import Atom, atom_depth
from ..errors import ClassError
from .engine import ChaseOutcome


def forest_children(outcome: ChaseOutcome) -> Dict[Atom, List[Atom]]:
    children: Dict[Atom, List[Atom]] = {}
    for child, parent in outcome.forest.items():
        children.setdefault(parent, []).append(child)
    return children


def tree_atoms(outcome: ChaseOutcome, root: Atom) -> List[Atom]:
    """Atoms of the tree rooted at root, breadth first."""
    children = forest_children(outcome)
    order = [root]
    for atom in order:
        order.extend(children.get(atom, ()))
    return order


def forest_level_counts(outcome: ChaseOutcome, root: Atom, strict: bool = True) -> Dict[int, int]:
    """Map each depth i to the number of atoms of depth i in the tree rooted at root.

    Args:
        outcome: A chase outcome (normally Finished).
        root: A database atom.
        strict: Refuse programs that are not guarded and roots outside the database.

    Raises:
        ClassError: strict and the program is not guarded.
        ValueError: strict and root is not a database atom.
    """
    if strict:
        if not classify(outcome.program).within(ProgramClass.GUARDED):
            raise ClassError("the chase forest is only defined for guarded programs")
        if root not in outcome.database:
            raise ValueError(f"{root} is not a database atom")
    counts = Counter(atom_depth(atom) for atom in tree_atoms(outcome, root))
    return dict(sorted(counts.items()))


def all_level_counts(outcome: ChaseOutcome, strict: bool = True) -> Dict[Atom, Dict[int, int]]:
    """forest_level_counts for every database atom, in database order."""
    roots = [atom for atom in outcome.atoms if atom in outcome.database]
    return {root: forest_level_counts(outcome, root, strict) for root in roots}

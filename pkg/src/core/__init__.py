"""Core data model: terms, atoms, TGDs, programs and syntactic classes."""

from .terms import Constant, Variable, Null, NullInterner, term_depth
from .model import Atom, TGD, Program, Instance, Provenance, atom_depth, rename_apart, unique_terms, active_domain
from .classify import ProgramClass, classify

__all__ = [
    "Constant",
    "Variable",
    "Null",
    "NullInterner",
    "term_depth",
    "Atom",
    "TGD",
    "Program",
    "Instance",
    "Provenance",
    "atom_depth",
    "rename_apart",
    "unique_terms",
    "active_domain",
    "ProgramClass",
    "classify",
]

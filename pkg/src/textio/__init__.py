"""Rule-language parsing, rendering and JSON results."""

from .parser import SourceProgram, parse_program, read_program
from .render import (
    NullNamer,
    render_atom,
    render_facts,
    render_instance,
    render_predicate,
    render_program,
    render_rules,
    render_term,
    render_tgd,
)

__all__ = [
    "SourceProgram",
    "parse_program",
    "read_program",
    "NullNamer",
    "render_atom",
    "render_facts",
    "render_instance",
    "render_predicate",
    "render_program",
    "render_rules",
    "render_term",
    "render_tgd",
]

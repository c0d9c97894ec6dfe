"""Rendering of programs and instances back into the rule language."""

import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.model import Atom, Program, TGD
from ..core.terms import Constant, Null, Term, Variable
from .parser import SourceProgram

_BARE_CONSTANT = re.compile(r"(?:[a-z][A-Za-z0-9_]*|[0-9]+)\Z")
_BARE_PREDICATE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_VARIABLE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


def _quote(text: str, mark: str) -> str:
    escaped = text.replace("\\", "\\\\").replace(mark, "\\" + mark)
    return f"{mark}{escaped}{mark}"


def render_predicate(name: str) -> str:
    if _BARE_PREDICATE.match(name):
        return name
    return _quote(name, '"')


class NullNamer:
    """Numbers nulls _:n1, _:n2, ... in order of first appearance."""

    def __init__(self, structured: bool = False):
        self.structured = structured
        self._names: Dict[Null, str] = {}

    def name(self, null: Null) -> str:
        if self.structured:
            return null.structured()
        if null not in self._names:
            self._names[null] = f"_:n{len(self._names) + 1}"
        return self._names[null]


def render_term(term: Term, namer: Optional[NullNamer] = None) -> str:
    if isinstance(term, Variable):
        if not _VARIABLE.match(term.name):
            raise ValueError(f"variable name {term.name!r} cannot be rendered")
        return term.name
    if isinstance(term, Constant):
        if _BARE_CONSTANT.match(term.name):
            return term.name
        return _quote(term.name, "'")
    return namer.name(term) if namer else str(term)


def render_atom(atom: Atom, namer: Optional[NullNamer] = None) -> str:
    args = ",".join(render_term(arg, namer) for arg in atom.args)
    return f"{render_predicate(atom.predicate)}({args})"


def render_tgd(tgd: TGD) -> str:
    body = ", ".join(render_atom(atom) for atom in tgd.body)
    head = ", ".join(render_atom(atom) for atom in tgd.head)
    exists = ""
    if tgd.ex_vars:
        exists = f"exists {','.join(var.name for var in tgd.ex_vars)}: "
    return f"{body} -> {exists}{head}."


def render_facts(facts: Iterable[Atom], namer: Optional[NullNamer] = None) -> List[str]:
    return [f"{render_atom(atom, namer)}." for atom in facts]


def render_program(source: SourceProgram) -> str:
    """Render facts and rules; statements keep source order when lines are known."""
    statements: List[Tuple[int, int, str]] = []
    fact_text = render_facts(source.facts)
    rule_text = [render_tgd(tgd) for tgd in source.program]
    if source.fact_lines and source.rule_lines:
        statements.extend((line, 0, text) for line, text in zip(source.fact_lines, fact_text))
        statements.extend((line, 1, text) for line, text in zip(source.rule_lines, rule_text))
        lines = [text for _, _, text in sorted(statements)]
    else:
        lines = fact_text + rule_text
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def render_instance(atoms: Sequence[Atom], structured: bool = False) -> str:
    namer = NullNamer(structured=structured)
    lines = render_facts(atoms, namer)
    return "\n".join(lines) + ("\n" if lines else "")


def render_rules(program: Program) -> str:
    lines = [render_tgd(tgd) for tgd in program]
    return "\n".join(lines) + ("\n" if lines else "")

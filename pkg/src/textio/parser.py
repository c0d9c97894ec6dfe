"""Parser for the rule language (facts and TGDs).

Grammar summary (see docs/GRAMMAR.md for the EBNF):

    R(a,b).                                  a fact
    R(X,Y), S(Y) -> exists Z: R(Y,Z), T(Z).  a TGD
    % comment to end of line
"""

import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pyparsing as pp

from ..core.model import Atom, Program, TGD
from ..core.terms import Constant, Variable
from ..errors import ProgramError, ProgramSyntaxError

logger = logging.getLogger(__name__)


@dataclass
class SourceProgram:
    """Facts and rules of one program text, with statement line numbers."""

    facts: Tuple[Atom, ...]
    program: Program
    fact_lines: Tuple[int, ...] = ()
    rule_lines: Tuple[int, ...] = ()
    source: Optional[str] = None
    # tgd id -> {renamed variable name: name written in the source}
    renamed: Dict[str, Dict[str, str]] = field(default_factory=dict)

    @property
    def database(self) -> frozenset:
        return frozenset(self.facts)

    @classmethod
    def of(cls, facts: Sequence[Atom], program: Program) -> "SourceProgram":
        return cls(facts=tuple(dict.fromkeys(facts)), program=program)


@dataclass
class _Statement:
    line: int
    column: int
    body: Tuple[Atom, ...]
    head: Tuple[Atom, ...] = ()
    declared: Optional[Tuple[Variable, ...]] = None
    is_rule: bool = False


def _build_grammar() -> pp.ParserElement:
    lpar, rpar, dot, colon = map(pp.Suppress, "().:")
    arrow = pp.Suppress("->")

    variable = pp.Regex(r"[A-Z][A-Za-z0-9_]*").set_parse_action(lambda t: Variable(t[0]))
    constant = (
        pp.Regex(r"[a-z][A-Za-z0-9_]*")
        | pp.Regex(r"[0-9]+")
        | pp.QuotedString("'", esc_char="\\")
    ).set_parse_action(lambda t: Constant(t[0]))
    term = (variable | constant).set_name("term")
    predicate = (pp.Regex(r"[A-Za-z][A-Za-z0-9_]*") | pp.QuotedString('"', esc_char="\\")).set_name(
        "predicate"
    )

    atom = (predicate + lpar + pp.Optional(pp.DelimitedList(term)) + rpar).set_parse_action(
        lambda t: Atom(t[0], tuple(t[1:]))
    ).set_name("atom")
    atoms = pp.Group(pp.DelimitedList(atom))
    exists = pp.Group(pp.Keyword("exists").suppress() + pp.DelimitedList(variable) + colon)

    def make_rule(s, loc, t):
        declared = tuple(t[1]) if len(t) == 3 else None
        return _Statement(pp.lineno(loc, s), pp.col(loc, s), tuple(t[0]), tuple(t[-1]), declared, True)

    def make_fact(s, loc, t):
        return _Statement(pp.lineno(loc, s), pp.col(loc, s), (t[0],))

    rule = (atoms + arrow - (pp.Optional(exists) + atoms + dot)).set_parse_action(make_rule)
    fact = (atom + dot).set_parse_action(make_fact)
    program = pp.ZeroOrMore(rule | fact) + pp.StringEnd()
    program.ignore(pp.Regex(r"%[^\n]*"))
    return program


_GRAMMAR = _build_grammar()


def parse_program(text: str, source: Optional[str] = None) -> SourceProgram:
    """Parse program text into facts and a renamed-apart set of TGDs.

    Raises:
        ProgramSyntaxError: Text outside the grammar (with line/column).
        ProgramError: Arity conflicts, constants in rules, variables in facts,
            or inconsistent existential declarations.
    """
    try:
        statements: List[_Statement] = list(_GRAMMAR.parse_string(text, parse_all=True))
    except pp.ParseBaseException as e:
        raise ProgramSyntaxError(e.msg, e.lineno, e.col, source) from None

    arities: Dict[str, int] = {}
    facts: Dict[Atom, int] = {}
    rules: List[_Statement] = []
    for statement in statements:
        for atom in statement.body + statement.head:
            known = arities.setdefault(atom.predicate, atom.arity)
            if known != atom.arity:
                raise ProgramError(
                    f"predicate {atom.predicate} used with arity {atom.arity}, earlier with {known}",
                    statement.line,
                )
        if statement.is_rule:
            _check_rule(statement)
            rules.append(statement)
        else:
            fact = statement.body[0]
            if not fact.is_fact():
                raise ProgramError(f"fact {fact} contains a variable", statement.line)
            facts.setdefault(fact, statement.line)

    program = Program(
        TGD(f"r{index}", rule.body, rule.head) for index, rule in enumerate(rules, start=1)
    )
    logger.debug(f"Parsed {len(facts)} facts and {len(program)} rules from {source or '<text>'}")
    return SourceProgram(
        facts=tuple(facts),
        program=program,
        fact_lines=tuple(facts.values()),
        rule_lines=tuple(rule.line for rule in rules),
        source=source,
        renamed=program.renamed,
    )


def _check_rule(statement: _Statement) -> None:
    for atom in statement.body + statement.head:
        for arg in atom.args:
            if isinstance(arg, Constant):
                raise ProgramError(f"constant {arg} in rule atom {atom}", statement.line)
    body_vars = {arg for atom in statement.body for arg in atom.args}
    head_vars = {arg for atom in statement.head for arg in atom.args}
    declared = statement.declared or ()
    if len(set(declared)) != len(declared):
        raise ProgramError("existential variable declared twice", statement.line)
    for var in declared:
        if var in body_vars:
            raise ProgramError(f"existential variable {var} also occurs in the body", statement.line)
        if var not in head_vars:
            raise ProgramError(f"existential variable {var} does not occur in the head", statement.line)
    undeclared = sorted(head_vars - body_vars - set(declared), key=lambda v: v.name)
    if undeclared:
        raise ProgramError(
            f"head variable {undeclared[0]} is neither in the body nor declared with 'exists'",
            statement.line,
        )


def read_program(path: str) -> SourceProgram:
    """Read and parse a program file; '-' reads standard input."""
    if path == "-":
        return parse_program(sys.stdin.read(), source="<stdin>")
    with open(path, encoding="utf-8") as f:
        return parse_program(f.read(), source=path)

"""Tests for the rule-language parser and renderer."""

import pytest

from src.core.model import Atom
from src.core.terms import Constant, Variable
from src.errors import ProgramError, ProgramSyntaxError
from src.textio.parser import parse_program, read_program
from src.textio.render import render_instance, render_program, render_rules


PROGRAM = """
% transitive closure with a witness
E(a,b).
E(b,c).
E(X,Y) -> T(X,Y).
T(X,Y), E(Y,Z) -> exists W: T(X,Z), Via(X,W).
"""


def test_parse_facts_and_rules():
    """Test facts, rule ids, existentials and statement lines."""
    source = parse_program(PROGRAM)
    assert source.facts == (
        Atom("E", (Constant("a"), Constant("b"))),
        Atom("E", (Constant("b"), Constant("c"))),
    )
    assert [tgd.id for tgd in source.program] == ["r1", "r2"]
    assert source.program.by_id["r2"].ex_vars == (Variable("W"),)
    assert source.fact_lines == (3, 4)
    assert source.rule_lines == (5, 6)


def test_undeclared_existential_requires_exists():
    """Test head-only variables must be declared."""
    with pytest.raises(ProgramError, match="neither in the body nor declared"):
        parse_program("R(X) -> P(X,Y).")


def test_variables_are_renamed_apart():
    """Test a variable reused by a later rule is renamed and recorded."""
    source = parse_program("R(X,Y) -> P(X).\nP(X) -> S(X).")
    second = source.program.by_id["r2"]
    assert second.body == (Atom("P", (Variable("X_2"),)),)
    assert source.renamed == {"r2": {"X_2": "X"}}


def test_round_trip_keeps_statement_order():
    """Test rendering and reparsing gives the same program."""
    source = parse_program(PROGRAM)
    text = render_program(source)
    assert text.splitlines() == [
        "E(a,b).",
        "E(b,c).",
        "E(X,Y) -> T(X,Y).",
        "T(X_2,Y_2), E(Y_2,Z) -> exists W: T(X_2,Z), Via(X_2,W).",
    ]
    again = parse_program(text)
    assert again.facts == source.facts
    assert again.program == source.program


def test_quoted_names_survive_rendering():
    """Test quoted predicates and constants render back quoted."""
    source = parse_program("\"R_{(1,1)}\"('hello world').")
    (fact,) = source.facts
    assert fact.predicate == "R_{(1,1)}"
    assert fact.args == (Constant("hello world"),)
    assert render_program(source) == "\"R_{(1,1)}\"('hello world').\n"


def test_numeric_constants_and_nullary_atoms():
    """Test numbers parse as constants and atoms may have no arguments."""
    source = parse_program("Start().\nEdge(1,2).\nStart() -> Go().")
    assert Atom("Start", ()) in source.facts
    assert Atom("Edge", (Constant("1"), Constant("2"))) in source.facts


def test_syntax_error_reports_line():
    """Test syntax errors carry the source name and line."""
    with pytest.raises(ProgramSyntaxError) as excinfo:
        parse_program("R(a,b).\nR(a", source="bad.tgd")
    assert excinfo.value.line == 2
    assert str(excinfo.value).startswith("bad.tgd:2:")


@pytest.mark.parametrize(
    "text, message",
    [
        ("R(a).\nR(a,b).", "arity"),
        ("R(X).", "contains a variable"),
        ("R(X) -> P(a).", "constant"),
        ("R(X) -> exists X: P(X).", "also occurs in the body"),
        ("R(X) -> exists Z: P(X).", "does not occur in the head"),
        ("R(X) -> exists Z,Z: P(Z).", "declared twice"),
    ],
)
def test_program_errors(text, message):
    """Test each semantic load check names the problem."""
    with pytest.raises(ProgramError, match=message):
        parse_program(text)


def test_render_rules_and_empty_instance():
    """Test rule rendering and the empty instance."""
    source = parse_program("R(X,Y) -> exists Z: R(Y,Z).")
    assert render_rules(source.program) == "R(X,Y) -> exists Z: R(Y,Z).\n"
    assert render_instance([]) == ""


def test_read_program_from_file(tmp_path):
    """Test reading a program from disk records its path."""
    path = tmp_path / "p.tgd"
    path.write_text("R(a,b).\n", encoding="utf-8")
    source = read_program(str(path))
    assert source.source == str(path)
    assert len(source.facts) == 1

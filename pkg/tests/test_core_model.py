"""Tests for terms, atoms, TGDs, programs and class recognition."""

import pytest

from src.core.classify import ProgramClass, classify
from src.core.model import Atom, Instance, Program, Provenance, TGD, atom_depth, unique_terms
from src.core.terms import Constant, Null, Variable, term_depth


def _atom(predicate, *names):
    """Uppercase names become variables, everything else constants."""
    return Atom(predicate, tuple(Variable(n) if n[0].isupper() else Constant(n) for n in names))


def _tgd(tgd_id, body, head):
    return TGD(tgd_id, tuple(body), tuple(head))


# ==========================================================================
# Terms
# ==========================================================================


def test_interned_nulls_are_shared(nulls):
    """Test one key yields one null, and lookup finds it without creating another."""
    a = Constant("a")
    first = nulls.intern("core_t1", (("Y", a),), "Z")
    second = nulls.intern("core_t1", (("Y", a),), "Z")
    assert first is second
    assert nulls.lookup("core_t1", (("Y", a),), "Z") is first


def test_null_depth_is_one_above_its_deepest_frontier_term(nulls):
    """Test null depth grows by one over the deepest binding term."""
    a = Constant("a")
    inner = nulls.intern("core_t2", (("Y", a),), "Z")
    outer = nulls.intern("core_t2", (("Y", inner),), "Z")
    assert term_depth(a) == 0
    assert term_depth(inner) == 1
    assert term_depth(outer) == 2
    assert atom_depth(Atom("R", (a, outer))) == 2


def test_null_without_frontier_has_depth_one(nulls):
    """Test a null with an empty binding sits at depth one."""
    null = nulls.intern("core_t3", (), "Z")
    assert isinstance(null, Null)
    assert null.depth == 1


def test_variable_has_no_depth():
    """Test depth is undefined for variables."""
    with pytest.raises(ValueError):
        term_depth(Variable("X"))


def test_intern_rejects_variables_in_binding(nulls):
    """Test nulls can only be keyed by ground terms."""
    with pytest.raises(ValueError, match="contains variable"):
        nulls.intern("core_t4", (("Y", Variable("X")),), "Z")


def test_structured_null_rendering(nulls):
    """Test the structured form names the rule, binding and existential."""
    null = nulls.intern("core_t5", (("Y", Constant("b")),), "Z")
    assert null.structured() == "_:core_t5{Y=b}.Z"


# ==========================================================================
# Atoms and TGDs
# ==========================================================================


def test_unique_terms_keeps_first_occurrences():
    """Test duplicates are dropped in first-occurrence order."""
    x, y, z = Variable("x"), Variable("y"), Variable("z")
    assert unique_terms((x, y, x, z, y)) == (x, y, z)


def test_frontier_and_existentials():
    """Test frontier and existential variables of a single-atom rule."""
    tgd = _tgd("t", [_atom("R", "X", "Y")], [_atom("R", "Y", "Z")])
    assert tgd.frontier == (Variable("Y"),)
    assert tgd.ex_vars == (Variable("Z"),)


def test_guard_is_leftmost_atom_with_all_body_variables():
    """Test the guard is the first body atom covering every body variable."""
    tgd = _tgd("t", [_atom("S", "X"), _atom("R", "X", "Y"), _atom("T", "Y", "X")], [_atom("P", "X")])
    assert tgd.guard == _atom("R", "X", "Y")


def test_forest_parent_without_guard():
    """Test unguarded rules hang results under the widest body atom."""
    tgd = _tgd("t", [_atom("R", "X", "Y"), _atom("P", "X", "Z", "V")], [_atom("P", "Y", "W", "Z")])
    assert tgd.guard is None
    assert tgd.forest_parent == _atom("P", "X", "Z", "V")


def test_tgd_rejects_constants_and_empty_parts():
    """Test rules need variables only and nonempty body and head."""
    with pytest.raises(ValueError):
        _tgd("t", [_atom("R", "a")], [_atom("P", "X")])
    with pytest.raises(ValueError):
        TGD("t", (), (_atom("P", "X"),))


def test_program_metrics():
    """Test predicate count, arity, atom count and norm."""
    program = Program([_tgd("t", [_atom("R", "X", "Y")], [_atom("R", "Y", "Z")])])
    assert program.pred_count == 1
    assert program.max_arity == 2
    assert program.atom_count == 2
    assert program.norm == 4


def test_program_rejects_arity_conflict():
    """Test a predicate keeps one arity across the program."""
    with pytest.raises(ValueError, match="arities"):
        Program([_tgd("t", [_atom("R", "X", "Y")], [_atom("R", "X")])])


def test_program_rejects_duplicate_ids():
    """Test rule ids are unique."""
    tgd = _tgd("t", [_atom("R", "X")], [_atom("P", "X")])
    with pytest.raises(ValueError, match="duplicate"):
        Program([tgd, tgd])


def test_program_renames_variables_apart():
    """Test a TGD reusing earlier variables gets fresh names and its provenance follows."""
    x, y = Variable("X"), Variable("Y")
    first = _tgd("t1", [_atom("R", "X", "Y")], [_atom("P", "X")])
    provenance = Provenance("t1", ((x, x), (y, Variable("X_2"))))
    second = TGD("t2", (_atom("P", "X"),), (_atom("R", "X", "X_2"),), provenance)
    program = Program([first, second])

    renamed = program.by_id["t2"]
    assert program.by_id["t1"] is first
    assert str(renamed) == "P(X_3) -> exists X_2: R(X_3,X_2)"
    assert renamed.provenance.as_dict() == {x: Variable("X_3"), y: Variable("X_2")}
    assert program.renamed == {"t2": {"X_3": "X"}}


def test_instance_deduplicates_and_indexes():
    """Test instances drop duplicates and index atoms by predicate."""
    instance = Instance([_atom("R", "a", "b"), _atom("R", "a", "b"), _atom("P", "a")])
    assert len(instance) == 2
    assert instance.with_predicate("R") == [_atom("R", "a", "b")]
    assert instance.candidates(_atom("R", "X", "c"), {}) == []


def test_instance_rejects_non_ground_atoms():
    """Test instances hold ground atoms only."""
    with pytest.raises(ValueError):
        Instance([_atom("R", "X")])


# ==========================================================================
# Classes
# ==========================================================================


@pytest.mark.parametrize(
    "body, expected",
    [
        ([_atom("R", "X", "Y")], ProgramClass.SIMPLE_LINEAR),
        ([_atom("R", "X", "X")], ProgramClass.LINEAR),
        ([_atom("R", "X", "Y"), _atom("S", "Y")], ProgramClass.GUARDED),
        ([_atom("R", "X"), _atom("S", "Y")], ProgramClass.GENERAL),
    ],
)
def test_classify_single_tgd(body, expected):
    """Test each class is recognized from one rule."""
    assert classify(Program([_tgd("t", body, [_atom("P", "X")])])) is expected


def test_classify_takes_the_widest_tgd():
    """Test a program is as wide as its widest rule."""
    program = Program(
        [
            _tgd("t1", [_atom("R", "X", "Y")], [_atom("P", "X")]),
            _tgd("t2", [_atom("R", "X", "X")], [_atom("P", "X")]),
        ]
    )
    assert classify(program) is ProgramClass.LINEAR


def test_empty_program_is_simple_linear():
    """Test the empty program falls in the narrowest class."""
    assert classify(Program([])) is ProgramClass.SIMPLE_LINEAR


def test_class_containment_and_parsing():
    """Test class containment and parsing by short name or label."""
    assert ProgramClass.SIMPLE_LINEAR.within(ProgramClass.GUARDED)
    assert not ProgramClass.GUARDED.within(ProgramClass.LINEAR)
    assert ProgramClass.parse("g") is ProgramClass.GUARDED
    assert ProgramClass.parse("SimpleLinear") is ProgramClass.SIMPLE_LINEAR
    with pytest.raises(ValueError):
        ProgramClass.parse("acyclic")

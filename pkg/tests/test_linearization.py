"""Tests for Sigma-types, completion, linearization and its partition oracle."""

import json

import pytest

from src.chase.engine import ChaseCaps
from src.core.model import Atom
from src.core.terms import Constant, Variable
from src.errors import ClassError, LinearizationBudgetError
from src.generators.families import gen_depth_family
from src.linearization.completion import TypeSaturator, completion
from src.linearization.linearize import linearize_program, linearize_tgd
from src.linearization.partition import el_partition
from src.linearization.types import SigmaType, TypeRegistry, canonical_type, guard_shapes, int_term
from src.textio.parser import parse_program


# guarded pair used to illustrate database and rule linearization
GUARDED_PAIR = """
R(a,a,b,c).
P(X,Y,X,U,W), S(X,U) -> exists Z1,Z2: R(U,Y,X,Z1), T(Z1,Z2,X).
R(X,X,Y,Z) -> Q(X,Z).
"""

BACK_PROPAGATION = """
R(a).
R(X) -> exists Z: P(X,Z).
P(X,Z) -> Q(X).
"""


def _fact(predicate, *names):
    return Atom(predicate, tuple(Constant(name) for name in names))


def _ints(predicate, *values):
    return Atom(predicate, tuple(int_term(v) for v in values))


def _vars(*names):
    return tuple(Variable(name) for name in names)


# ==========================================================================
# Types
# ==========================================================================


def test_canonical_type_relabels_in_first_occurrence_order():
    """Test guard terms are renumbered by first occurrence."""
    sigma_type, _ = canonical_type(_ints("R", 2, 2, 4, 1), [])
    assert sigma_type.guard == _ints("R", 1, 1, 2, 3)
    assert sigma_type.side == frozenset()
    assert sigma_type.arity == 3


def test_canonical_type_is_stable_on_canonical_input():
    """Test an already canonical type maps to itself."""
    guard = _ints("R", 1, 2, 1)
    sigma_type, rho = canonical_type(guard, [_ints("S", 2)])
    assert sigma_type.guard == guard
    assert sigma_type.side == frozenset({_ints("S", 2)})
    assert rho == {int_term(1): int_term(1), int_term(2): int_term(2)}


def test_canonical_type_over_constants():
    """Test constants are abstracted into canonical integers."""
    sigma_type, _ = canonical_type(_fact("P", "b", "a", "b"), [_fact("S", "a")])
    assert sigma_type.guard == _ints("P", 1, 2, 1)
    assert sigma_type.side == frozenset({_ints("S", 2)})


def test_canonical_type_rejects_foreign_terms():
    """Test side atoms must only use guard terms."""
    with pytest.raises(ValueError, match="not a term"):
        canonical_type(_fact("P", "a"), [_fact("S", "b")])


def test_type_instantiation_and_name():
    """Test a type instantiates over a tuple and has a stable name."""
    sigma_type = SigmaType(_ints("R", 1, 1, 2, 3), frozenset({_ints("Q", 1, 3)}))
    a, b, c = Constant("a"), Constant("b"), Constant("c")
    assert sigma_type.instantiate((a, b, c)) == frozenset({_fact("R", "a", "a", "b", "c"), _fact("Q", "a", "c")})
    assert sigma_type.name.startswith("[tau#")
    assert sigma_type.name == SigmaType(_ints("R", 1, 1, 2, 3), frozenset({_ints("Q", 1, 3)})).name
    with pytest.raises(ValueError):
        sigma_type.instantiate((a, b))


def test_guard_shapes_are_counted_by_bell_numbers():
    """Test a ternary predicate has five guard shapes."""
    shapes = list(guard_shapes("R", 3))
    assert len(shapes) == 5
    assert shapes[0] == _ints("R", 1, 1, 1)
    assert _ints("R", 1, 2, 3) in shapes


def test_registry_budget():
    """Test the registry refuses types past its budget."""
    registry = TypeRegistry(budget=1)
    assert registry.register(SigmaType(_ints("R", 1), frozenset()))
    assert not registry.register(SigmaType(_ints("R", 1), frozenset()))
    with pytest.raises(LinearizationBudgetError):
        registry.register(SigmaType(_ints("P", 1), frozenset()))


# ==========================================================================
# Completion
# ==========================================================================


def test_completion_of_guarded_pair():
    """Test completion adds the null-free consequences of the database."""
    source = parse_program(GUARDED_PAIR)
    assert completion(source.database, source.program, ChaseCaps.of(100)) == frozenset(
        {_fact("R", "a", "a", "b", "c"), _fact("Q", "a", "c")}
    )


def test_completion_without_rules_is_the_instance():
    """Test completion without rules returns the input."""
    source = parse_program("R(a,b).\nS(b).")
    assert completion(source.database, source.program) == source.database


@pytest.mark.parametrize("engine", ["chase", "saturation", "auto"])
def test_completion_propagates_back_through_nulls(engine):
    """Test facts derived through nulls reach the completion in every engine."""
    source = parse_program(BACK_PROPAGATION)
    result = completion(source.database, source.program, ChaseCaps.of(100), engine=engine)
    assert result == frozenset({_fact("R", "a"), _fact("Q", "a")})


def test_saturation_handles_divergent_chase():
    """Test saturation completes where the chase engine hits its cap."""
    source = parse_program("R(a).\nR(X) -> exists Z: P(X,Z).\nP(X,Z) -> R(Z), Q(X).")
    caps = ChaseCaps.of(50)
    with pytest.raises(LinearizationBudgetError):
        completion(source.database, source.program, caps, engine="chase")
    result = completion(source.database, source.program, caps, engine="auto")
    assert result == frozenset({_fact("R", "a"), _fact("Q", "a")})


def test_completion_rejects_unguarded_programs():
    """Test completion refuses unguarded programs."""
    source = gen_depth_family(3)
    with pytest.raises(ClassError):
        completion(source.database, source.program)


def test_completion_rejects_unknown_engine():
    """Test an unknown completion engine is refused."""
    source = parse_program(BACK_PROPAGATION)
    with pytest.raises(ValueError):
        completion(source.database, source.program, engine="magic")


# ==========================================================================
# Linearization
# ==========================================================================


def test_linearized_database_of_guarded_pair():
    """Test each database guard becomes one typed atom."""
    source = parse_program(GUARDED_PAIR)
    lin = linearize_program(source.database, source.program, ChaseCaps.of(100))
    tau = SigmaType(_ints("R", 1, 1, 2, 3), frozenset({_ints("Q", 1, 3)}))
    assert lin.database == frozenset({Atom(tau.name, (Constant("a"), Constant("b"), Constant("c")))})
    assert lin.sidecar()[tau.name] == {"guard": "R(1,1,2,3)", "side": ["Q(1,3)"]}


def test_rule_linearization_of_guarded_pair():
    """Test a guarded rule becomes one linear rule between types."""
    source = parse_program(GUARDED_PAIR)
    sigma = source.program.by_id["r1"]
    tau = SigmaType(_ints("P", 1, 2, 1, 2, 3), frozenset({_ints("S", 1, 2), _ints("S", 1, 1)}))
    linear, (tau1, tau2) = linearize_tgd(sigma, tau, TypeSaturator(source.program))

    assert tau1 == SigmaType(
        _ints("R", 1, 1, 2, 3),
        frozenset({_ints("S", 2, 1), _ints("S", 2, 2), _ints("Q", 1, 3)}),
    )
    # S(x,x) lies over the terms of the T atom, so it is part of that type too
    assert tau2 == SigmaType(_ints("T", 1, 2, 3), frozenset({_ints("S", 3, 3)}))

    x, y, w, z1, z2 = _vars("X", "Y", "W", "Z1", "Z2")
    assert linear.body == (Atom(tau.name, (x, y, w)),)
    assert linear.head == (Atom(tau1.name, (y, x, z1)), Atom(tau2.name, (z1, z2, x)))
    assert linear.ex_vars == (z1, z2)
    assert linear.provenance.origin == "r1"


def test_rule_linearization_needs_body_in_type():
    """Test a rule whose body is not in the type yields nothing."""
    source = parse_program(GUARDED_PAIR)
    sigma = source.program.by_id["r1"]
    tau = SigmaType(_ints("P", 1, 2, 1, 2, 3), frozenset())
    assert linearize_tgd(sigma, tau, TypeSaturator(source.program)) is None


def test_linearization_without_rules():
    """Test a program without rules linearizes to its typed database."""
    source = parse_program("R(a,b).\nR(c,c).")
    lin = linearize_program(source.database, source.program)
    assert len(lin.program) == 0
    assert {atom.arity for atom in lin.database} == {1, 2}
    assert all(not sigma_type.side for sigma_type in lin.types.values())


def test_full_type_enumeration_contains_lazy_rules():
    """Test full enumeration finds every rule the lazy walk does."""
    source = parse_program("R(a).\nR(X) -> exists Z: P(X,Z).")
    lazy = linearize_program(source.database, source.program)
    full = linearize_program(source.database, source.program, full_type_enum=True)
    assert set(lazy.program.by_id) <= set(full.program.by_id)
    assert len(full.types) == 36


def test_linearization_budget():
    """Test the type budget stops linearization."""
    source = parse_program(BACK_PROPAGATION)
    with pytest.raises(LinearizationBudgetError):
        linearize_program(source.database, source.program, budget=1)


def test_linearization_rejects_unguarded_programs():
    """Test linearization refuses unguarded programs."""
    source = gen_depth_family(3)
    with pytest.raises(ClassError):
        linearize_program(source.database, source.program)


def test_sidecar_json_is_parseable():
    """Test the type table is valid JSON covering every type."""
    source = parse_program(BACK_PROPAGATION)
    lin = linearize_program(source.database, source.program)
    table = json.loads(lin.registry.sidecar_json())
    assert set(lin.types) <= set(table)


# ==========================================================================
# Partition oracle
# ==========================================================================


def test_partition_without_rules_pairs_facts_with_encodings():
    """Test each fact pairs with its typed encoding."""
    source = parse_program("R(a,b).")
    report = el_partition(source.database, source.program, ChaseCaps.of(100))
    assert report.ok
    (members,) = report.classes.values()
    (encoded,) = members
    assert encoded.predicate.startswith("[tau#")
    assert encoded.args == (Constant("a"), Constant("b"))


def test_partition_of_guarded_pair():
    """Test the guarded pair partitions into matching classes."""
    source = parse_program(GUARDED_PAIR)
    report = el_partition(source.database, source.program, ChaseCaps.of(100))
    assert report.ok, report.problems
    assert len(report.original) == len(report.derived) == 2


def test_partition_pairs_null_atoms():
    """Test atoms over nulls pair up at matching depths."""
    source = parse_program("R(a).\nR(X) -> exists Z: P(X,Z).")
    report = el_partition(source.database, source.program, ChaseCaps.of(100))
    assert report.ok, report.problems
    assert report.original.max_depth == report.derived.max_depth == 1


def test_partition_with_back_propagation():
    """Test the partition holds when completion adds facts through nulls."""
    source = parse_program(BACK_PROPAGATION)
    report = el_partition(source.database, source.program, ChaseCaps.of(100))
    assert report.ok, report.problems
    assert report.depths_match

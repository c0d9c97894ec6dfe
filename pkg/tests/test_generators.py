"""Tests for the lower-bound families, the Turing machine encoding and random programs."""

import pytest
from hypothesis import given, settings, strategies as st

from src.analysis.dependency_graph import is_weakly_acyclic
from src.chase.engine import ChaseCaps, ChaseStatus, run_chase
from src.core.classify import ProgramClass, classify
from src.errors import GeneratorError
from src.generators.families import gen_depth_family, gen_guarded_lower, gen_linear_lower, gen_sl_lower
from src.generators.random_gen import RandomParams, gen_random, is_acyclic_instance
from src.generators.tm import BLANK, LEFT_END, TmSpec, gen_tm, parse_tm_spec, tm_rules


HALTING_MACHINE = """
% writes an a and halts
states: q0 q1
alphabet: > < _ a
initial: q0
q0 _ -> q1 a R
"""

LOOPING_MACHINE = """
states: q0
alphabet: > < _
initial: q0
q0 _ -> q0 _ S
"""


def _count(outcome, predicate):
    return len([atom for atom in outcome.atoms if atom.predicate == predicate])


# ==========================================================================
# Lower-bound families
# ==========================================================================


@pytest.mark.parametrize("ell, n, m, predicate, expected", [(1, 1, 2, "R1", 4), (2, 2, 2, "R2", 32)])
def test_simple_linear_family_size(ell, n, m, predicate, expected):
    """Test the simple linear family reaches its predicted size."""
    source = gen_sl_lower(ell, n, m)
    assert classify(source.program) is ProgramClass.SIMPLE_LINEAR
    outcome = run_chase(source.database, source.program, ChaseCaps.of(10_000))
    assert outcome.finished
    assert _count(outcome, predicate) == expected


@pytest.mark.parametrize("ell, expected", [(1, 15), (3, 45)])
def test_linear_family_size(ell, expected):
    """Test the linear family grows with ell as predicted."""
    source = gen_linear_lower(ell, 1, 2)
    assert classify(source.program) is ProgramClass.LINEAR
    outcome = run_chase(source.database, source.program, ChaseCaps.of(10_000))
    assert outcome.finished
    assert _count(outcome, "R1") == expected


@pytest.mark.slow
def test_guarded_family_is_large():
    """Test the smallest guarded family already builds a large instance."""
    source = gen_guarded_lower(1, 1, 1)
    assert classify(source.program) is ProgramClass.GUARDED
    outcome = run_chase(source.database, source.program, ChaseCaps.of(200_000))
    assert outcome.finished
    assert len(outcome) >= 64


def test_guarded_family_respects_limit():
    """Test n and m above the configured limit are refused."""
    with pytest.raises(GeneratorError, match="limit"):
        gen_guarded_lower(1, 3, 1, limit=2)
    assert classify(gen_guarded_lower(1, 3, 1, limit=3).program) is ProgramClass.GUARDED


@pytest.mark.parametrize(
    "factory, args",
    [(gen_sl_lower, (0, 1, 1)), (gen_linear_lower, (1, 0, 1)), (gen_guarded_lower, (1, 1, 0))],
)
def test_families_need_positive_parameters(factory, args):
    """Test zero parameters are refused."""
    with pytest.raises(GeneratorError):
        factory(*args)


def test_simple_linear_family_includes_identity_rules():
    """Test every R_i gets the swap and collapse rules for j = 1 through m."""
    source = gen_sl_lower(1, 2, 2)
    assert len(source.program) == 1 + 2 * 2 * 2 + 1
    identities = [tgd for tgd in source.program if tgd.body == tgd.head]
    assert [tgd.body[0].predicate for tgd in identities] == ["R1", "R1", "R2", "R2"]


@pytest.mark.parametrize(
    "build",
    [
        lambda: gen_sl_lower(1, 2, 3),
        lambda: gen_linear_lower(1, 2, 2),
        lambda: gen_guarded_lower(1, 1, 1),
        lambda: gen_depth_family(4),
        lambda: gen_tm(parse_tm_spec(HALTING_MACHINE)),
        lambda: gen_random(RandomParams(ProgramClass.GUARDED, preds=3, max_arity=3, tgds=6), 11),
    ],
    ids=["sl-lb", "lin-lb", "g-lb", "depth", "tm", "random"],
)
def test_generated_rules_share_no_variables(build):
    """Test generated programs are renamed apart like parsed ones."""
    seen = set()
    for tgd in build().program:
        variables = set(tgd.body_variables) | set(tgd.ex_vars)
        assert not variables & seen, tgd.id
        seen |= variables


def test_depth_family_shape():
    """Test the depth family has n facts and one general rule."""
    source = gen_depth_family(4)
    assert len(source.database) == 4
    assert classify(source.program) is ProgramClass.GENERAL
    (tgd,) = source.program
    assert tgd.id == "r1"


def test_depth_family_needs_two_constants():
    """Test the depth family needs n of at least two."""
    with pytest.raises(GeneratorError):
        gen_depth_family(1)


# ==========================================================================
# Turing machines
# ==========================================================================


def test_parse_tm_spec():
    """Test a machine description parses into states, alphabet and transitions."""
    spec = parse_tm_spec(HALTING_MACHINE)
    assert spec.states == ("q0", "q1")
    assert spec.alphabet[0] == LEFT_END
    assert spec.transitions == {("q0", BLANK): ("q1", "a", "R")}


def test_tm_rules_are_general():
    """Test the machine-independent rules are general."""
    assert classify(tm_rules()) is ProgramClass.GENERAL


def test_halting_machine_chase_finishes():
    """Test a halting machine gives a finite chase."""
    source = gen_tm(parse_tm_spec(HALTING_MACHINE))
    outcome = run_chase(source.database, source.program, ChaseCaps.of(10_000))
    assert outcome.status is ChaseStatus.FINISHED


@pytest.mark.slow
def test_looping_machine_chase_hits_cap():
    """Test a looping machine runs into the atom cap."""
    source = gen_tm(parse_tm_spec(LOOPING_MACHINE))
    outcome = run_chase(source.database, source.program, ChaseCaps.of(10_000))
    assert outcome.status is ChaseStatus.CAP_EXCEEDED


@pytest.mark.parametrize(
    "text, message",
    [
        ("states: q0\nalphabet: > < _\n", "missing"),
        ("states: q0\nalphabet: > < _\ninitial: q0\nq0 _ -> q0 _ S\nq0 _ -> q0 _ R\n", "nondeterministic"),
        ("states: q0\nalphabet: > < _\ninitial: q0\nq0 b -> q0 _ S\n", "unknown symbol"),
        ("states: q0\nalphabet: > < _\ninitial: q0\nq0 _ -> q9 _ S\n", "unknown state"),
        ("states: q0\nalphabet: > _\ninitial: q0\n", "alphabet must contain"),
        ("states: q0\nalphabet: > < _\ninitial: q0\nq0 _ -> q0 _ X\n", "line 4"),
    ],
)
def test_tm_spec_errors(text, message):
    """Test malformed machine descriptions are reported."""
    with pytest.raises(GeneratorError, match=message):
        parse_tm_spec(text)


def test_repeated_identical_transition_is_accepted():
    """Test a duplicated transition line is not nondeterminism."""
    spec = parse_tm_spec(HALTING_MACHINE + "q0 _ -> q1 a R\n")
    assert len(spec.transitions) == 1


def test_tm_spec_validates_direction():
    """Test an unknown head move is refused."""
    spec = TmSpec(("q0",), (LEFT_END, "◁", BLANK), "q0", {("q0", BLANK): ("q0", BLANK, "X")})
    with pytest.raises(GeneratorError, match="direction"):
        spec.validate()


# ==========================================================================
# Random programs
# ==========================================================================


def test_random_generation_is_reproducible():
    """Test one seed always gives one program."""
    params = RandomParams(ProgramClass.LINEAR)
    first, second = gen_random(params, 11), gen_random(params, 11)
    assert first.program == second.program
    assert first.database == second.database


@settings(max_examples=50)
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    program_class=st.sampled_from([ProgramClass.SIMPLE_LINEAR, ProgramClass.LINEAR, ProgramClass.GUARDED]),
)
def test_random_programs_stay_in_their_class(seed, program_class):
    """Test random programs fall within the requested class."""
    source = gen_random(RandomParams(program_class), seed)
    assert classify(source.program).within(program_class)


@settings(max_examples=50)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_acyclic_mode_has_no_cycles(seed):
    """Test acyclic mode yields weakly acyclic programs."""
    params = RandomParams(ProgramClass.SIMPLE_LINEAR, acyclic=True)
    assert is_acyclic_instance(params, seed)
    assert is_weakly_acyclic(gen_random(params, seed).program)


def test_random_rejects_general_class():
    """Test random programs of class general are refused."""
    with pytest.raises(GeneratorError):
        gen_random(RandomParams(ProgramClass.GENERAL), 1)


def test_random_rejects_bad_sizes():
    """Test non-positive sizes are refused."""
    with pytest.raises(GeneratorError):
        gen_random(RandomParams(preds=0), 1)

"""Tests for the validation store, runner and analytics."""

import sqlite3
from types import SimpleNamespace

import pytest

import src.validation.runner as runner_module
from src.chase.engine import ChaseCaps, run_chase
from src.core.classify import ProgramClass
from src.generators.random_gen import RandomParams
from src.textio.parser import parse_program
from src.validation import InstanceRecord, ValidationAnalytics, ValidationDatabase, ValidationRunner
from src.validation.runner import CAP_SCALE


GUARDED_FINITE = "R(a,b).\nS(b).\nR(X,Y), S(Y) -> exists Z: R(Y,Z).\n"

GUARDED_INFINITE = "R(a,b).\nS(b).\nR(X,Y), S(Y) -> exists Z: R(Y,Z), S(Z).\n"


@pytest.fixture
def validation_db(tmp_path):
    """Initialized store in a temporary directory."""
    db = ValidationDatabase(db_path=str(tmp_path / "validation.db"))
    db.init_tables()
    return db


def _acyclic(program_class):
    return RandomParams(program_class, preds=3, max_arity=2, tgds=3, facts=3, constants=3, acyclic=True)


def test_init_tables(validation_db):
    """Test the schema creates both tables and rows come back as sqlite3.Row."""
    with validation_db.get_connection() as conn:
        tables = {row[0] for row in conn.execute("SELECT name FROM sqlite_master WHERE type='table'")}
        assert {"runs", "instances"} <= tables
        assert conn.row_factory == sqlite3.Row


def test_store_enforces_foreign_keys(validation_db):
    """Test an instance row must belong to a stored run."""
    with pytest.raises(sqlite3.IntegrityError):
        validation_db.record_instance(42, InstanceRecord(0, "Linear"))


def test_apply_schema_reports_a_new_file(tmp_path):
    """Test only the first schema application creates the file."""
    db = ValidationDatabase(db_path=str(tmp_path / "nested" / "store.db"))
    assert db.apply_schema(["CREATE TABLE IF NOT EXISTS t (x INTEGER)"]) is True
    assert db.apply_schema(["CREATE TABLE IF NOT EXISTS t (x INTEGER)"]) is False
    assert db.exists()


def test_finish_run_counts_instances(validation_db):
    """Test finishing a run tallies agreements, refusals and disagreements."""
    run_id = validation_db.start_run("sl", "SimpleLinear", 0, 4, {"preds": 3})
    validation_db.record_instance(run_id, InstanceRecord(0, "SimpleLinear", agree=True))
    validation_db.record_instance(run_id, InstanceRecord(1, "SimpleLinear", agree=True))
    validation_db.record_instance(run_id, InstanceRecord(2, "SimpleLinear", agree=False, note="answers differ"))
    validation_db.record_instance(run_id, InstanceRecord(3, "SimpleLinear", note="refused"))

    counts = validation_db.finish_run(run_id)
    assert counts == {"total": 4, "agreements": 2, "refusals": 1, "disagreements": 1}

    run = validation_db.get_run(run_id)
    assert run["finished_at"].endswith("Z")
    assert run["params"] == '{"preds": 3}'
    assert run["disagreements"] == 1


def test_record_instance_upserts_by_seed(validation_db):
    """Test recording a seed twice keeps the latest result."""
    run_id = validation_db.start_run("l", "Linear", 5, 1)
    validation_db.record_instance(run_id, InstanceRecord(5, "Linear", note="first"))
    validation_db.record_instance(run_id, InstanceRecord(5, "Linear", agree=True, chase_atoms=12))

    (instance,) = validation_db.get_instances(run_id)
    assert instance["agree"] == 1
    assert instance["chase_atoms"] == 12
    assert instance["note"] is None


def test_get_run_missing(validation_db):
    """Test unknown run ids give nothing."""
    assert validation_db.get_run(999) is None
    assert validation_db.get_instances(999) == []


def test_runner_checks_deciders(validation_db):
    """Test a decider run records one instance per seed."""
    runner = ValidationRunner(validation_db, ChaseCaps.of(5_000))
    summary = runner.run("sl", 3, start_seed=10, params=_acyclic(ProgramClass.SIMPLE_LINEAR))

    assert summary["kind"] == "sl"
    assert summary["total"] == 3
    assert summary["disagreements"] == 0
    seeds = [row["seed"] for row in validation_db.get_instances(summary["run_id"])]
    assert seeds == [10, 11, 12]


def test_runner_checks_simplification(validation_db):
    """Test a simplification run agrees on acyclic programs."""
    runner = ValidationRunner(validation_db, ChaseCaps.of(5_000))
    summary = runner.run("simplify", 2, params=_acyclic(ProgramClass.LINEAR))
    assert summary["total"] == 2
    assert summary["disagreements"] == 0


def test_linearization_check_agrees_on_divergence(validation_db):
    """Test two capped chases count as agreement once the instance is decided divergent."""
    runner = ValidationRunner(validation_db, ChaseCaps.of(200))
    record = runner._check_linearization(parse_program(GUARDED_INFINITE), 0)
    assert record.agree is True
    assert (record.characterization, record.bound) == ("CapExceeded", "CapExceeded")
    assert record.note == "both chases capped, decided Diverges"


def test_linearization_check_flags_one_sided_termination(validation_db, sl_diverge, monkeypatch):
    """Test a linearization whose chase diverges while the original finishes is a disagreement."""
    monkeypatch.setattr(
        runner_module,
        "linearize_program",
        lambda db, program, caps: SimpleNamespace(database=sl_diverge.database, program=sl_diverge.program),
    )
    runner = ValidationRunner(validation_db, ChaseCaps.of(50))
    record = runner._check_linearization(parse_program(GUARDED_FINITE), 0)
    assert record.agree is False
    assert record.note == "original Finished, linearized CapExceeded"


def test_settle_reruns_the_capped_side(validation_db, sl_diverge, linear_no_trigger):
    """Test only the capped chase is rerun, with caps scaled up."""
    runner = ValidationRunner(validation_db, ChaseCaps.of(50))
    original, derived = runner._settle(
        lambda caps: run_chase(linear_no_trigger.database, linear_no_trigger.program, caps),
        lambda caps: run_chase(sl_diverge.database, sl_diverge.program, caps),
    )
    assert original.caps.max_atoms == 50
    assert derived.caps.max_atoms == 50 * CAP_SCALE
    assert not derived.finished


@pytest.mark.parametrize("kind, count", [("everything", 1), ("sl", 0)])
def test_runner_rejects_bad_arguments(validation_db, kind, count):
    """Test unknown kinds and empty counts are refused."""
    runner = ValidationRunner(validation_db)
    with pytest.raises(ValueError):
        runner.run(kind, count)


def test_analytics_summary(validation_db):
    """Test the per-kind summary of a stored run."""
    runner = ValidationRunner(validation_db, ChaseCaps.of(5_000))
    runner.run("sl", 2, params=_acyclic(ProgramClass.SIMPLE_LINEAR))

    summary = ValidationAnalytics(validation_db).summary()
    entry = summary["kinds"]["sl"]
    assert entry["runs"] == 1
    assert entry["total"] == 2
    assert set(entry) >= {"agreements", "refusals", "disagreements", "agreement_rate", "median_chase_atoms"}
    assert summary["latest"]["kind"] == "sl"


def test_analytics_on_empty_store(validation_db):
    """Test the summary of a store without runs."""
    assert ValidationAnalytics(validation_db).summary() == {"kinds": {}, "latest": None}


# ==========================================================================
# Corpus agreement
# ==========================================================================


@pytest.mark.slow
@pytest.mark.parametrize("kind, count", [("sl", 200), ("l", 100), ("simplify", 100), ("linearize", 30)])
def test_corpus_has_no_disagreements(validation_db, kind, count):
    """Test full-size seeded corpora check out without a single disagreement."""
    summary = ValidationRunner(validation_db).run(kind, count)
    assert summary["total"] == count
    assert summary["disagreements"] == 0
    assert summary["agreements"] + summary["refusals"] == count

"""SQLite store for validation runs and their per-instance outcomes."""

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from ..config import Config
from ..database import BaseDatabase
from .models import INDEXES, TABLES

UTC = timezone.utc


def utc_now_iso() -> str:
    """Current UTC time as ISO 8601 with a trailing Z."""
    return datetime.now(UTC).isoformat().replace("+00:00", "Z")


@dataclass
class InstanceRecord:
    """Outcome of one seeded instance within a run."""

    seed: int
    program_class: str
    characterization: Optional[str] = None
    bound: Optional[str] = None
    ucq: Optional[str] = None
    chase_atoms: Optional[int] = None
    max_depth: Optional[int] = None
    agree: Optional[bool] = None
    note: Optional[str] = None


class ValidationDatabase(BaseDatabase):
    """Stores validation runs (one row per run) and their instances."""

    def __init__(self, db_path: Optional[str] = None):
        if db_path is None:
            Config.ensure_data_dir()
        super().__init__(db_path or Config.RESULTS_DATABASE_PATH)

    def init_tables(self) -> None:
        """Create the run and instance tables and their indexes if they don't exist."""
        self.apply_schema([*TABLES, *INDEXES])

    # ==========================================================================
    # Runs
    # ==========================================================================

    def start_run(
        self,
        kind: str,
        program_class: str,
        start_seed: int,
        count: int,
        params: Optional[Dict[str, Any]] = None,
    ) -> int:
        """Insert a run row and return its id."""
        with self.get_connection() as conn:
            cursor = conn.execute(
                """
                INSERT INTO runs (kind, program_class, start_seed, count, params, started_at)
                VALUES (?, ?, ?, ?, ?, ?)
                """,
                (kind, program_class, start_seed, count, json.dumps(params or {}, sort_keys=True), utc_now_iso()),
            )
            return cursor.lastrowid

    def record_instance(self, run_id: int, record: InstanceRecord) -> None:
        agree = None if record.agree is None else int(record.agree)
        with self.get_connection() as conn:
            conn.execute(
                """
                INSERT INTO instances (
                    run_id, seed, program_class, characterization, bound, ucq,
                    chase_atoms, max_depth, agree, note
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                ON CONFLICT(run_id, seed) DO UPDATE SET
                    characterization = excluded.characterization,
                    bound = excluded.bound,
                    ucq = excluded.ucq,
                    chase_atoms = excluded.chase_atoms,
                    max_depth = excluded.max_depth,
                    agree = excluded.agree,
                    note = excluded.note
                """,
                (
                    run_id,
                    record.seed,
                    record.program_class,
                    record.characterization,
                    record.bound,
                    record.ucq,
                    record.chase_atoms,
                    record.max_depth,
                    agree,
                    record.note,
                ),
            )

    def finish_run(self, run_id: int) -> Dict[str, int]:
        """Fill in the run's counters from its instances and stamp finished_at."""
        with self.get_connection() as conn:
            row = conn.execute(
                """
                SELECT COUNT(*) AS total,
                       COALESCE(SUM(agree = 1), 0) AS agreements,
                       COALESCE(SUM(agree IS NULL), 0) AS refusals,
                       COALESCE(SUM(agree = 0), 0) AS disagreements
                FROM instances WHERE run_id = ?
                """,
                (run_id,),
            ).fetchone()
            counts = dict(row)
            conn.execute(
                """
                UPDATE runs SET finished_at = ?, total = ?, agreements = ?,
                    refusals = ?, disagreements = ?
                WHERE id = ?
                """,
                (
                    utc_now_iso(),
                    counts["total"],
                    counts["agreements"],
                    counts["refusals"],
                    counts["disagreements"],
                    run_id,
                ),
            )
        return counts

    def get_run(self, run_id: int) -> Optional[Dict[str, Any]]:
        with self.get_connection() as conn:
            row = conn.execute("SELECT * FROM runs WHERE id = ?", (run_id,)).fetchone()
            return dict(row) if row else None

    def get_instances(self, run_id: int) -> List[Dict[str, Any]]:
        with self.get_connection() as conn:
            rows = conn.execute(
                "SELECT * FROM instances WHERE run_id = ? ORDER BY seed", (run_id,)
            ).fetchall()
            return [dict(row) for row in rows]

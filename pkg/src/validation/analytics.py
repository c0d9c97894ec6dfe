"""Aggregates over stored validation runs.

Per kind: number of runs, instances, agreements, refusals, disagreements and the
agreement rate among instances where every check answered. Also reports the
chase size distribution of the checked instances.
"""

import statistics
from collections import defaultdict
from typing import Any, Dict, List, Optional

from .database import ValidationDatabase


class ValidationAnalytics:
    """Summarizes the runs in a ValidationDatabase."""

    def __init__(self, db: Optional[ValidationDatabase] = None):
        """Initialize analytics.

        Args:
            db: Database manager instance.
        """
        self.db = db or ValidationDatabase()
        self.db.init_tables()

    def _chase_sizes(self) -> Dict[str, List[int]]:
        sizes: Dict[str, List[int]] = defaultdict(list)
        with self.db.get_connection() as conn:
            rows = conn.execute(
                """
                SELECT r.kind AS kind, i.chase_atoms AS chase_atoms
                FROM instances i JOIN runs r ON r.id = i.run_id
                WHERE i.chase_atoms IS NOT NULL
                """
            ).fetchall()
        for row in rows:
            sizes[row["kind"]].append(row["chase_atoms"])
        return sizes

    def summary(self) -> Dict[str, Any]:
        """Per-kind totals and agreement rates, plus the latest run.

        Returns:
            {"kinds": {kind: {...}}, "latest": run row or None}.
        """
        with self.db.get_connection() as conn:
            rows = conn.execute(
                """
                SELECT kind,
                       COUNT(*) AS runs,
                       COALESCE(SUM(total), 0) AS total,
                       COALESCE(SUM(agreements), 0) AS agreements,
                       COALESCE(SUM(refusals), 0) AS refusals,
                       COALESCE(SUM(disagreements), 0) AS disagreements
                FROM runs
                WHERE finished_at IS NOT NULL
                GROUP BY kind
                ORDER BY kind
                """
            ).fetchall()
            latest = conn.execute("SELECT * FROM runs ORDER BY id DESC LIMIT 1").fetchone()

        sizes = self._chase_sizes()
        kinds: Dict[str, Dict[str, Any]] = {}
        for row in rows:
            entry = dict(row)
            answered = entry["agreements"] + entry["disagreements"]
            entry["agreement_rate"] = round(entry["agreements"] / answered, 4) if answered else None
            kind_sizes = sizes.get(row["kind"], [])
            entry["median_chase_atoms"] = statistics.median(kind_sizes) if kind_sizes else None
            entry["max_chase_atoms"] = max(kind_sizes) if kind_sizes else None
            kinds[row["kind"]] = entry
        return {"kinds": kinds, "latest": dict(latest) if latest else None}

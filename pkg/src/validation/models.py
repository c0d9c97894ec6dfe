"""SQL schema for stored validation runs."""

# ==========================================================================
# Runs
# ==========================================================================

CREATE_RUNS_TABLE = """
CREATE TABLE IF NOT EXISTS runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    kind TEXT NOT NULL,
    program_class TEXT NOT NULL,
    start_seed INTEGER NOT NULL,
    count INTEGER NOT NULL,
    params TEXT,
    started_at TEXT NOT NULL,
    finished_at TEXT,
    total INTEGER NOT NULL DEFAULT 0,
    agreements INTEGER NOT NULL DEFAULT 0,
    refusals INTEGER NOT NULL DEFAULT 0,
    disagreements INTEGER NOT NULL DEFAULT 0
);
"""

# ==========================================================================
# Instances
# ==========================================================================

CREATE_INSTANCES_TABLE = """
CREATE TABLE IF NOT EXISTS instances (
    run_id INTEGER NOT NULL REFERENCES runs(id) ON DELETE CASCADE,
    seed INTEGER NOT NULL,
    program_class TEXT NOT NULL,
    characterization TEXT,
    bound TEXT,
    ucq TEXT,
    chase_atoms INTEGER,
    max_depth INTEGER,
    -- 1 when every check agreed, 0 on disagreement, NULL when a check refused
    agree INTEGER,
    note TEXT,
    PRIMARY KEY (run_id, seed)
);
"""

TABLES = [
    CREATE_RUNS_TABLE,
    CREATE_INSTANCES_TABLE,
]

INDEXES = [
    "CREATE INDEX IF NOT EXISTS idx_runs_kind ON runs(kind);",
    "CREATE INDEX IF NOT EXISTS idx_instances_agree ON instances(agree);",
]

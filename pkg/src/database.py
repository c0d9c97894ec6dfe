"""SQLite plumbing shared by the result stores (validation runs and their instances)."""

import logging
import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Iterator, Union

logger = logging.getLogger(__name__)

# Seconds a writer waits for a lock held by a concurrent validation run.
BUSY_TIMEOUT = 30.0


class BaseDatabase:
    """A result store in one SQLite file, with foreign keys enforced."""

    def __init__(self, db_path: Union[str, Path]):
        """Point the store at db_path; the parent directory is created if missing."""
        self.db_path = str(db_path)
        Path(self.db_path).parent.mkdir(parents=True, exist_ok=True)

    @contextmanager
    def get_connection(self) -> Iterator[sqlite3.Connection]:
        """One unit of work: commit when the block succeeds, roll back when it raises."""
        conn = sqlite3.connect(self.db_path, timeout=BUSY_TIMEOUT)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys = ON")
        try:
            yield conn
            conn.commit()
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    def apply_schema(self, statements: Iterable[str]) -> bool:
        """Run idempotent CREATE statements. Returns True if the file did not exist before."""
        is_new = not self.exists()
        with self.get_connection() as conn:
            for sql in statements:
                conn.execute(sql)
        if is_new:
            logger.info(f"Created result store at {self.db_path}")
        return is_new

    def exists(self) -> bool:
        return Path(self.db_path).exists()

"""SQLite ledger of suite runs."""

import sqlite3
from pathlib import Path
from typing import Optional

from ..suites import CheckRecord, SuiteResult
from ..utils import get_logger

logger = get_logger(__name__)


class ResultStore:
    """SQLite database recording suite runs and their checks."""

    def __init__(self, db_path: Path):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_db()

    def _get_conn(self) -> sqlite3.Connection:
        """Get a database connection."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        return conn

    def _init_db(self) -> None:
        """Initialize database schema."""
        with self._get_conn() as conn:
            conn.executescript("""
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY,
                    suite TEXT NOT NULL,
                    seed INTEGER,
                    passed INTEGER,
                    wall_time REAL,
                    report_json TEXT,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                );

                CREATE TABLE IF NOT EXISTS checks (
                    id INTEGER PRIMARY KEY,
                    run_id INTEGER REFERENCES runs(id) ON DELETE CASCADE,
                    name TEXT,
                    residual REAL,
                    tolerance REAL,
                    passed INTEGER
                );

                CREATE INDEX IF NOT EXISTS idx_runs_suite ON runs(suite);
                CREATE INDEX IF NOT EXISTS idx_checks_run ON checks(run_id);
            """)
        logger.debug(f"Run ledger initialized at {self.db_path}")

    def record(self, result: SuiteResult) -> int:
        """Store a suite result with its checks. Returns the run id."""
        with self._get_conn() as conn:
            cursor = conn.execute(
                """
                INSERT INTO runs (suite, seed, passed, wall_time, report_json)
                VALUES (?, ?, ?, ?, ?)
                """,
                (result.suite, result.seed, int(result.passed), result.wall_time, result.to_json()),
            )
            run_id = cursor.lastrowid or 0
            conn.executemany(
                """
                INSERT INTO checks (run_id, name, residual, tolerance, passed)
                VALUES (?, ?, ?, ?, ?)
                """,
                [
                    (run_id, check.name, check.residual, check.tolerance, int(check.passed))
                    for check in result.checks
                ],
            )
        logger.info(f"[ledger] recorded {result.suite} run {run_id} ({len(result.checks)} checks)")
        return run_id

    def recent_runs(self, limit: int = 20, suite: Optional[str] = None) -> list[dict]:
        """Most recent runs first, optionally for one suite only."""
        query = """
            SELECT r.id, r.suite, r.seed, r.passed, r.wall_time, r.created_at,
                   COUNT(c.id) AS total,
                   COALESCE(SUM(CASE WHEN c.passed = 0 THEN 1 ELSE 0 END), 0) AS failed
            FROM runs r LEFT JOIN checks c ON c.run_id = r.id
        """
        params: tuple = ()
        if suite is not None:
            query += " WHERE r.suite = ?"
            params = (suite,)
        query += " GROUP BY r.id ORDER BY r.id DESC LIMIT ?"
        with self._get_conn() as conn:
            rows = conn.execute(query, params + (limit,)).fetchall()
            return [
                {
                    "id": row["id"],
                    "suite": row["suite"],
                    "seed": row["seed"],
                    "pass": bool(row["passed"]),
                    "wall_time": row["wall_time"],
                    "created_at": row["created_at"],
                    "total": row["total"],
                    "failed": row["failed"],
                }
                for row in rows
            ]

    def load(self, run_id: int) -> Optional[SuiteResult]:
        """Rebuild the stored SuiteResult of a run."""
        with self._get_conn() as conn:
            row = conn.execute(
                "SELECT report_json, wall_time FROM runs WHERE id = ?", (run_id,)
            ).fetchone()
        if row is None:
            return None
        result = SuiteResult.from_json(row["report_json"])
        result.wall_time = row["wall_time"] or 0.0
        return result

    def failed_checks(self, run_id: int) -> list[CheckRecord]:
        """Checks of a run whose residual exceeded the tolerance."""
        with self._get_conn() as conn:
            rows = conn.execute(
                """
                SELECT name, residual, tolerance, passed FROM checks
                WHERE run_id = ? AND passed = 0
                ORDER BY id
                """,
                (run_id,),
            ).fetchall()
            return [
                CheckRecord(row["name"], row["residual"], row["tolerance"], bool(row["passed"]))
                for row in rows
            ]

    def clear(self) -> int:
        """Delete all recorded runs. Returns the number removed."""
        with self._get_conn() as conn:
            conn.execute("DELETE FROM checks")
            cursor = conn.execute("DELETE FROM runs")
            count = cursor.rowcount
            logger.info(f"Cleared {count} runs from the ledger")
            return count

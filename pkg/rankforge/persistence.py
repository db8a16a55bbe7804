# rankforge/persistence.py

import json
import sqlite3
import threading
from contextlib import closing
from datetime import datetime, timezone
from typing import List, Optional

from rankforge.records import RankReport
from rankforge.reporting import report_from_json, report_to_dict
from rankforge.utils import get_logger

logger = get_logger(__name__)

# Global lock to synchronize database access across threads
DB_LOCK = threading.RLock()

# Name of the table used for storing emitted reports
TABLE_NAME = "rank_reports"


def ensure_schema(db_path: str) -> None:
    """
    Creates the report history table (named by TABLE_NAME) if it does not exist.

    Args:
        db_path (str): The file path to the SQLite database.

    Raises:
        sqlite3.Error: If an error occurs while connecting to the database or executing SQL.
    """
    with DB_LOCK:
        with closing(sqlite3.connect(db_path, timeout=30.0)) as conn, conn:
            cursor = conn.cursor()
            cursor.execute("PRAGMA journal_mode=WAL;")
            cursor.execute(f"""
            CREATE TABLE IF NOT EXISTS {TABLE_NAME} (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                created_at TEXT,
                method TEXT,
                n INTEGER,
                converged INTEGER,
                report_json TEXT -- canonical JSON document
            )
            """)


def save_report(report: RankReport, db_path: str) -> int:
    """
    Stores the JSON document of a report.

    Returns:
        int: row id of the new history entry.
    """
    ensure_schema(db_path)
    params = {
        "created_at": datetime.now(timezone.utc).isoformat(),
        "method": report.method,
        "n": len(report.labels),
        "converged": int(report.converged),
        "report_json": json.dumps(report_to_dict(report), ensure_ascii=False),
    }
    with DB_LOCK:
        with closing(sqlite3.connect(db_path, timeout=30.0)) as conn, conn:
            cursor = conn.cursor()
            cursor.execute(f"""
                INSERT INTO {TABLE_NAME} (created_at, method, n, converged, report_json)
                VALUES (:created_at, :method, :n, :converged, :report_json)
            """, params)
            row_id = int(cursor.lastrowid)
    logger.info("report %d (%s, n=%d) saved to %s", row_id, report.method, params["n"], db_path)
    return row_id


def load_reports(db_path: str, method: Optional[str] = None) -> List[RankReport]:
    """
    Reads stored reports back, oldest first, optionally only those of one method.

    Raises:
        sqlite3.DatabaseError: If there is an error connecting to or querying the database.
        InputError: If a stored document is not a rank report.
    """
    ensure_schema(db_path)
    query = f"SELECT report_json FROM {TABLE_NAME}"
    args: tuple = ()
    if method is not None:
        query += " WHERE method = ?"
        args = (method,)
    query += " ORDER BY id"
    with DB_LOCK:
        with closing(sqlite3.connect(db_path, timeout=30.0)) as conn:
            rows = conn.execute(query, args).fetchall()
    return [report_from_json(row[0]) for row in rows]

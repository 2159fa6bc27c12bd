import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional


def create_tables(conn) -> None:
    cur = conn.cursor()

    # One row per CLI invocation
    cur.execute(
        """
        CREATE TABLE IF NOT EXISTS runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            created_at TEXT NOT NULL,
            command TEXT NOT NULL,           -- 'verify', 'intertwine', ...
            config_json TEXT NOT NULL,
            status TEXT NOT NULL,            -- 'pass', 'fail', 'error'
            exit_code INTEGER NOT NULL,
            report_json TEXT NOT NULL
        )
        """
    )
    conn.commit()


# ---------- Run helpers ----------


def insert_run(conn, command: str, run_config: Dict[str, Any], status: str, exit_code: int, report: Dict[str, Any]) -> int:
    cur = conn.cursor()
    cur.execute(
        """
        INSERT INTO runs (created_at, command, config_json, status, exit_code, report_json)
        VALUES (?, ?, ?, ?, ?, ?)
        """,
        (
            datetime.now(timezone.utc).isoformat(),
            command,
            json.dumps(run_config, sort_keys=True, default=str),
            status,
            exit_code,
            json.dumps(report, sort_keys=True, default=str),
        ),
    )
    conn.commit()
    return cur.lastrowid


def _row_to_dict(row) -> Dict[str, Any]:
    keys = ["id", "created_at", "command", "config", "status", "exit_code", "report"]
    out = dict(zip(keys, row))
    for k in ("config", "report"):
        out[k] = json.loads(out[k]) if out[k] else {}
    return out


def fetch_run(conn, run_id: int) -> Optional[Dict[str, Any]]:
    cur = conn.cursor()
    cur.execute(
        "SELECT id, created_at, command, config_json, status, exit_code, report_json FROM runs WHERE id = ?",
        (run_id,),
    )
    row = cur.fetchone()
    return _row_to_dict(row) if row else None


def list_runs(conn, limit: int = 20) -> List[Dict[str, Any]]:
    """Most recent runs first, without their reports."""
    cur = conn.cursor()
    cur.execute(
        "SELECT id, created_at, command, status, exit_code FROM runs ORDER BY id DESC LIMIT ?",
        (limit,),
    )
    return [
        {"id": r[0], "created_at": r[1], "command": r[2], "status": r[3], "exit_code": r[4]}
        for r in cur.fetchall()
    ]

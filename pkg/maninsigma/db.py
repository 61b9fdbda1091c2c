# maninsigma/db.py
import sqlite3
from datetime import datetime, timezone

from . import config


def _path(path=None):
    return path or config.DB_PATH


def _conn(path=None):
    return sqlite3.connect(_path(path), check_same_thread=False)


def init_db(path=None):
    c = _conn(path)
    cur = c.cursor()
    cur.executescript("""
    CREATE TABLE IF NOT EXISTS runs (
        id INTEGER PRIMARY KEY AUTOINCREMENT,
        ts TEXT NOT NULL,
        command TEXT NOT NULL,
        inputs_digest TEXT NOT NULL,
        exit_status INTEGER NOT NULL,
        body TEXT NOT NULL
    );
    """)
    c.commit()
    c.close()


def persist_report(report, path=None):
    """Archive a RunReport; the timestamp lives only here, never in the report body."""
    init_db(path)
    c = _conn(path)
    cur = c.cursor()
    cur.execute("INSERT INTO runs (ts, command, inputs_digest, exit_status, body) VALUES (?, ?, ?, ?, ?)",
                (datetime.now(timezone.utc).isoformat(), report.command, report.inputs_digest,
                 int(report.exit_status), report.to_json()))
    c.commit()
    c.close()


def get_reports(limit=200, path=None):
    c = _conn(path)
    cur = c.cursor()
    cur.execute("SELECT id, ts, command, inputs_digest, exit_status, body FROM runs ORDER BY id DESC LIMIT ?", (limit,))
    rows = cur.fetchall()
    c.close()
    return rows

import json
import logging
import sqlite3
from pathlib import Path
from typing import Dict, List, Optional

from src.config import CONFIG

logger = logging.getLogger(__name__)


class DatabaseManager:
    """SQLite store for run-ledger events."""

    def __init__(self, db_path: Optional[str] = None):
        ledger_config = CONFIG.get("ledger", {})
        self.db_path = db_path or ledger_config.get("sqlite_path", "./data/ap3lab_runs.db")
        self.conn = None

    def connect(self):
        """Connect to SQLite and create the table if needed; stays disconnected on failure."""
        try:
            Path(self.db_path).parent.mkdir(parents=True, exist_ok=True)
            self.conn = sqlite3.connect(self.db_path, check_same_thread=False)
            self.conn.row_factory = sqlite3.Row
            self._create_tables()
            logger.debug("Ledger database connected: %s", self.db_path)
        except (sqlite3.Error, OSError) as e:
            logger.warning("Ledger database unavailable: %s. Using in-memory fallback.", e)
            self.conn = None

    def _create_tables(self):
        cursor = self.conn.cursor()
        cursor.executescript("""
            CREATE TABLE IF NOT EXISTS ledger_events (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                timestamp TEXT NOT NULL,
                command TEXT NOT NULL,
                parameters TEXT,
                outcome TEXT,
                exit_code INTEGER NOT NULL DEFAULT 0
            );

            CREATE INDEX IF NOT EXISTS idx_ledger_command ON ledger_events(command);
            CREATE INDEX IF NOT EXISTS idx_ledger_timestamp ON ledger_events(timestamp);
        """)
        self.conn.commit()

    def log_event(self, timestamp: str, command: str, parameters: Optional[Dict] = None,
                  outcome: Optional[Dict] = None, exit_code: int = 0) -> bool:
        """Insert one event; returns False when nothing was written."""
        if self.conn is None:
            return False
        try:
            self.conn.execute(
                """
                INSERT INTO ledger_events (timestamp, command, parameters, outcome, exit_code)
                VALUES (?, ?, ?, ?, ?)
                """,
                (
                    timestamp, command,
                    json.dumps(parameters, default=str) if parameters else None,
                    json.dumps(outcome, default=str) if outcome else None,
                    exit_code,
                ),
            )
            self.conn.commit()
            return True
        except sqlite3.Error as e:
            logger.error("Failed to record ledger event: %s", e)
            return False

    def recent_events(self, limit: int = 20, command: Optional[str] = None) -> List[Dict]:
        """Most recent events first."""
        if self.conn is None:
            return []
        query = "SELECT * FROM ledger_events"
        args: list = []
        if command:
            query += " WHERE command = ?"
            args.append(command)
        query += " ORDER BY id DESC LIMIT ?"
        args.append(limit)
        try:
            rows = self.conn.execute(query, args).fetchall()
        except sqlite3.Error as e:
            logger.error("Failed to read ledger events: %s", e)
            return []
        events = []
        for row in rows:
            event = dict(row)
            for field in ("parameters", "outcome"):
                if event.get(field):
                    try:
                        event[field] = json.loads(event[field])
                    except (json.JSONDecodeError, TypeError):
                        pass
            events.append(event)
        return events

    def close(self):
        if self.conn:
            self.conn.close()
            self.conn = None

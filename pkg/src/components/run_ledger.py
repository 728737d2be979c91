import csv
import io
import json
import logging
from typing import Dict, List, Optional

from src.config import CONFIG
from src.models.ledger_event import LedgerEvent
from src.utils.db_utils import DatabaseManager

logger = logging.getLogger(__name__)


class RunLedger:
    """Records every CLI run; falls back to memory when sqlite is disabled or unavailable."""

    def __init__(self, db_path: Optional[str] = None, enabled: Optional[bool] = None):
        ledger_config = CONFIG.get("ledger", {})
        self.enabled = ledger_config.get("enabled", True) if enabled is None else enabled
        self.db = DatabaseManager(db_path)
        if self.enabled:
            self.db.connect()
        self.in_memory_events: List[Dict] = []

    def record(self, command: str, parameters: Optional[Dict] = None,
               outcome: Optional[Dict] = None, exit_code: int = 0) -> LedgerEvent:
        event = LedgerEvent(
            command=command, parameters=parameters or {}, outcome=outcome, exit_code=exit_code,
        )
        row = {
            "timestamp": event.timestamp.isoformat(),
            "command": event.command,
            "parameters": event.parameters,
            "outcome": event.outcome,
            "exit_code": event.exit_code,
        }
        self.in_memory_events.append(row)
        self.db.log_event(**row)
        logger.info("Ledger: %s exited %d", command, exit_code)
        return event

    def recent(self, limit: int = 20, command: Optional[str] = None) -> List[Dict]:
        events = self.db.recent_events(limit, command)
        if events:
            return events
        memory = [e for e in self.in_memory_events if command is None or e["command"] == command]
        return list(reversed(memory))[:limit]

    def export(self, fmt: str = "json", limit: int = 20, command: Optional[str] = None) -> str:
        events = self.recent(limit, command)
        if fmt == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["timestamp", "command", "exit_code", "parameters", "outcome"])
            for event in events:
                writer.writerow([
                    event.get("timestamp"), event.get("command"), event.get("exit_code"),
                    json.dumps(event.get("parameters"), default=str),
                    json.dumps(event.get("outcome"), default=str),
                ])
            return buffer.getvalue()
        return json.dumps(events, indent=2, default=str)

    def close(self):
        self.db.close()

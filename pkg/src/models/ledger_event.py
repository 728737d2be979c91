from datetime import datetime
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class LedgerEvent(BaseModel):
    """One CLI invocation as recorded in the run ledger."""

    command: str  # count, construct, predict, table, search, verify, ledger
    timestamp: datetime = Field(default_factory=datetime.now)
    parameters: Dict[str, Any] = Field(default_factory=dict)
    outcome: Optional[Dict[str, Any]] = None
    exit_code: int = 0

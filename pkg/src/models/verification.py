from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class VerificationRow(BaseModel):
    """One formula-vs-count comparison of a verify suite."""

    check: str
    construction: str
    params: Dict[str, Any] = Field(default_factory=dict)
    expected: Optional[int] = None
    actual: Optional[int] = None
    passed: bool
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    suite: str
    rows: List[VerificationRow] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> List[VerificationRow]:
        return [row for row in self.rows if not row.passed]

    def to_output(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": len(self.rows),
            "failed": len(self.failures),
            "rows": [row.model_dump() for row in self.rows],
        }

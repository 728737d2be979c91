from typing import List, Optional

from pydantic import BaseModel, field_validator

from src.models.space import PointSet


class GroundSet(BaseModel):
    """Universe of candidate points that searches choose subsets from."""

    candidates: PointSet

    @property
    def space(self):
        return self.candidates.space

    def __len__(self) -> int:
        return len(self.candidates)


class AnnealingSchedule(BaseModel):
    initial_temperature: Optional[float] = None
    cooling_ratio: float = 0.995
    proposals: Optional[int] = None
    proposal_factor: int = 200

    @field_validator("cooling_ratio")
    @classmethod
    def ratio_in_unit_interval(cls, v):
        if not 0 < v <= 1:
            raise ValueError("cooling_ratio must be in (0, 1]")
        return v


class SearchResult(BaseModel):
    mode: str
    n: int
    best_value: int
    witnesses: List[List[int]] = []
    evaluations: int = 0
    seed: Optional[int] = None


class AuditReport(BaseModel):
    """Outcome of checking one upper bound against many sampled point sets."""

    bound_name: str
    trials: int
    seed: int
    violations: int = 0
    failures: List[dict] = []
    tightest_total: Optional[int] = None
    tightest_bound: Optional[int] = None
    tightest_point_set: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

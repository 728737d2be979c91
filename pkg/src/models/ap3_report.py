from typing import List, Optional, Tuple

from pydantic import BaseModel, model_validator


class CirclePairs(BaseModel):
    """Pairs(A) and Pairs0(A) of a circle set, as sorted index pairs (i < j)."""

    pairs: List[Tuple[int, int]] = []
    pairs0: List[Tuple[int, int]] = []

    @model_validator(mode="after")
    def pairs0_within_pairs(self):
        missing = set(self.pairs0) - set(self.pairs)
        if missing:
            raise ValueError(f"Pairs0 entries {sorted(missing)} are not in Pairs")
        return self


class Ap3Report(BaseModel):
    """Ordered 3-AP count of a point set with the per-point middle weights.

    weights[i] is the number of progressions whose middle element is the
    i-th point of the set; constant triples are included.
    """

    total: int
    weights: List[int] = []
    pairs: Optional[CirclePairs] = None

    @model_validator(mode="after")
    def check_parity(self):
        if self.total != sum(self.weights):
            raise ValueError(f"total {self.total} differs from the weight sum {sum(self.weights)}")
        odd_failures = [i for i, w in enumerate(self.weights) if w % 2 == 0]
        if odd_failures:
            raise ValueError(f"Even middle weight at indices {odd_failures}")
        if (self.total - len(self.weights)) % 2:
            raise ValueError("total - |A| must be even")
        return self

    @property
    def n(self) -> int:
        return len(self.weights)

    def to_output(self) -> dict:
        return {"n": self.n, "total": self.total, "weights": list(self.weights)}

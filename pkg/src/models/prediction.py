from enum import Enum

from pydantic import BaseModel, field_validator


class PredictionKind(str, Enum):
    EXACT_MAXIMUM = "ExactMaximum"
    LOWER_BOUND_WITNESS = "LowerBoundWitness"
    UPPER_BOUND = "UpperBound"


class Prediction(BaseModel):
    value: int
    kind: PredictionKind
    source: str

    @field_validator("value")
    @classmethod
    def value_non_negative(cls, v):
        if v < 0:
            raise ValueError("Prediction value must be non-negative")
        return v

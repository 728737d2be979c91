"""Exact scalar helpers. Every distance in the library is a Fraction."""
import re
from fractions import Fraction
from typing import Union

ExactScalar = Fraction

_SCALAR_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(value: Union[str, int, Fraction]) -> ExactScalar:
    """Parse an int, a Fraction, or a "p/q" / "p" string into a Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"Expected an exact scalar, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _SCALAR_RE.match(value)
        if not match:
            raise ValueError(f"Expected an exact scalar 'p/q' or 'p', got {value!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ValueError(f"Zero denominator in scalar {value!r}")
        return Fraction(numerator, denominator)
    raise ValueError(f"Expected an exact scalar, got {type(value).__name__}")


def format_scalar(value: ExactScalar) -> str:
    return str(Fraction(value))


def reduce_turn(t: ExactScalar) -> ExactScalar:
    """Reduce a turn into [0, 1)."""
    return Fraction(t) % 1

"""Closed-form maxima, upper bounds and ball sizes.

Everything here is exact integer/rational arithmetic except
growth_exponent, which fits a log-log slope with numpy.
"""
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

import numpy as np

from src.models.prediction import Prediction, PredictionKind
from src.utils.errors import InvalidParametersError

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParametersError(message)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to the non-integer {value}")
    return int(value)


def _non_negative(n: int, what: str) -> None:
    _require(n >= 0, f"{what} needs n >= 0, got {n}")


# ---------------------------------------------------------------------------
# Exact maxima
# ---------------------------------------------------------------------------

def mu_line(n: int) -> Prediction:
    _non_negative(n, "mu_line")
    return Prediction(value=(n * n + 1) // 2, kind=PredictionKind.EXACT_MAXIMUM, source="line-progression")


def mu_circle(n: int) -> Prediction:
    """Maximum over n-point subsets of the circle."""
    _non_negative(n, "mu_circle")
    if n <= 2:
        return Prediction(value=n, kind=PredictionKind.EXACT_MAXIMUM, source="circle-small-n")
    square = Fraction(n * n, 2)
    extra = {0: Fraction(n), 1: Fraction(n, 2), 2: Fraction(2), 3: Fraction(n, 2) - 1}[n % 4]
    return Prediction(
        value=_as_int(square + extra, "mu_circle"),
        kind=PredictionKind.EXACT_MAXIMUM,
        source=f"circle-families-mod4-{n % 4}",
    )


def evenly_spread_count(n: int) -> int:
    """Count of the evenly spread n-set: 2n * floor(n/4) + n."""
    _require(n >= 1, f"evenly_spread_count needs n >= 1, got {n}")
    return 2 * n * (n // 4) + n


def mu_equator(n: int) -> Prediction:
    """Maximum over n-point subsets of the equator plus the poles; a lower bound for S^2."""
    _require(n >= 2, f"mu_equator needs n >= 2, got {n}")
    linear = {
        0: 2 * Fraction(n) - 4,
        1: Fraction(5 * n, 2) - 8,
        2: 3 * Fraction(n) - 6,
        3: Fraction(5 * n, 2) - 7,
    }[n % 4]
    return Prediction(
        value=_as_int(Fraction(n * n, 2) + linear, "mu_equator"),
        kind=PredictionKind.EXACT_MAXIMUM,
        source=f"equator-poles-mod4-{n % 4}",
    )


def bipartite_exact(n_left: int, n_right: int) -> Prediction:
    """Exact count of a complete-bipartite point set with the given side sizes."""
    _require(n_left >= 0 and n_right >= 0, "bipartite_exact needs non-negative side sizes")
    size = n_left + n_right
    return Prediction(
        value=(size - 2) * n_left * n_right + size,
        kind=PredictionKind.LOWER_BOUND_WITNESS,
        source="complete-bipartite-split",
    )


def mu_bipartite(n: int) -> Prediction:
    _non_negative(n, "mu_bipartite")
    left, right = n // 2, n - n // 2
    value = bipartite_exact(left, right).value
    return Prediction(value=value, kind=PredictionKind.EXACT_MAXIMUM, source="complete-bipartite-balanced")


def mu_radial(n: int) -> Prediction:
    _non_negative(n, "mu_radial")
    value = 0 if n == 0 else n * n - 2 * n + 2
    return Prediction(value=value, kind=PredictionKind.EXACT_MAXIMUM, source="radial-star")


# ---------------------------------------------------------------------------
# Upper bounds
# ---------------------------------------------------------------------------

def unique_midpoint_cap(n: int) -> Prediction:
    """Cap for spaces where a pair (a, c) has at most one middle point."""
    _non_negative(n, "unique_midpoint_cap")
    value = 0 if n == 0 else n * n - 2 * n + 2
    return Prediction(value=value, kind=PredictionKind.UPPER_BOUND, source="unique-midpoint")


def circle_cap_general(n: int) -> Prediction:
    _non_negative(n, "circle_cap_general")
    return Prediction(value=n * (n // 2) + n, kind=PredictionKind.UPPER_BOUND, source="circle-pairs")


def circle_cap_mod2(n: int) -> Prediction:
    """Sharper circle cap, valid only when n mod 4 = 2."""
    _require(n >= 0 and n % 4 == 2, f"circle_cap_mod2 applies only to n mod 4 = 2, got {n}")
    return Prediction(value=n * n // 2 + 2, kind=PredictionKind.UPPER_BOUND, source="circle-rotation")


def general_cap(n: int) -> Prediction:
    """Cap valid in every metric space: 2*floor((n/2) * floor((n-1)/2) * ceil((n-1)/2)) + n."""
    _non_negative(n, "general_cap")
    lower, upper = (n - 1) // 2, -((1 - n) // 2)
    value = 2 * math.floor(Fraction(n, 2) * lower * upper) + n
    return Prediction(value=value, kind=PredictionKind.UPPER_BOUND, source="general-triangle-count")


def general_cap_polynomial(n: int) -> Prediction:
    """Branchwise polynomial form of general_cap: n^3/4 - n^2/2 plus a linear tail."""
    _non_negative(n, "general_cap_polynomial")
    if n % 2 == 0:
        tail = Fraction(n)
    elif n % 4 == 1:
        tail = Fraction(5 * n, 4)
    else:
        tail = Fraction(5 * n, 4) - 1
    value = Fraction(n ** 3, 4) - Fraction(n ** 2, 2) + tail
    return Prediction(
        value=_as_int(value, "general_cap_polynomial"),
        kind=PredictionKind.UPPER_BOUND,
        source="general-triangle-count",
    )


def sphere_trivial_cap(n: int) -> Prediction:
    _non_negative(n, "sphere_trivial_cap")
    return Prediction(value=n * n, kind=PredictionKind.UPPER_BOUND, source="sphere-third-point")


# ---------------------------------------------------------------------------
# Trees and lattices
# ---------------------------------------------------------------------------

def tree_ball_size(r: int, d0: int) -> int:
    _require(r >= 2 and d0 >= 0, f"tree_ball_size needs r >= 2 and d0 >= 0, got ({r}, {d0})")
    if r == 2:
        return 2 * d0 + 1
    return 1 + r * ((r - 1) ** d0 - 1) // (r - 2)


def tree_limsup_coefficient(r: int) -> Fraction:
    _require(r >= 2, f"tree_limsup_coefficient needs r >= 2, got {r}")
    return HALF + Fraction((r - 2) ** 2, 2 * r * r)


def tree_ball_exact(r: int, d0: int) -> Prediction:
    """Exact count of the radius-d0 ball of the r-regular tree."""
    size = tree_ball_size(r, d0)
    if r == 2:
        value = mu_line(size).value
    else:
        exact = (
            tree_limsup_coefficient(r) * size * size
            + Fraction(2 * (r - 2), r * r) * size
            + Fraction(2, r * r)
        )
        value = _as_int(exact, f"tree_ball_exact({r}, {d0})")
    return Prediction(value=value, kind=PredictionKind.LOWER_BOUND_WITNESS, source="regular-tree-ball")


def tree_weight(r: int, d1: int) -> int:
    """Middle weight of a vertex whose ball of radius d1 lies inside the set."""
    _require(r >= 2 and d1 >= 0, f"tree_weight needs r >= 2 and d1 >= 0, got ({r}, {d1})")
    if r == 2:
        return 2 * d1 + 1
    return ((r - 1) ** (2 * d1 + 1) - 1) // (r - 2)


def lattice_ball_size(dim: int, d0: int) -> int:
    _require(dim >= 1 and d0 >= 0, f"lattice_ball_size needs dim >= 1 and d0 >= 0, got ({dim}, {d0})")
    return sum(math.comb(dim, k) * 2 ** k * math.comb(d0, k) for k in range(dim + 1))


def lattice_sphere_size(dim: int, d: int) -> int:
    _require(dim >= 1 and d >= 0, f"lattice_sphere_size needs dim >= 1 and d >= 0, got ({dim}, {d})")
    if d == 0:
        return 1
    return sum(math.comb(dim, k) * 2 ** k * math.comb(d - 1, k - 1) for k in range(1, dim + 1))


def lattice_ball_lower_bound(dim: int, d0: int) -> int:
    """Strict lower bound 2^dim * C(d0 + dim, 3*dim - 1) for the count of a lattice ball."""
    _require(dim >= 1 and d0 >= 0, f"lattice_ball_lower_bound needs dim >= 1 and d0 >= 0, got ({dim}, {d0})")
    return 2 ** dim * math.comb(d0 + dim, 3 * dim - 1)


def growth_exponent(sizes: Sequence[int], counts: Sequence[int]) -> float:
    """Least-squares slope of log(count) against log(size)."""
    _require(len(sizes) == len(counts), "growth_exponent needs one count per size")
    _require(len(sizes) >= 2, "growth_exponent needs at least two sizes")
    _require(all(b > a for a, b in zip(sizes, sizes[1:])), "sizes must be strictly increasing")
    _require(min(sizes) > 0 and min(counts) > 0, "sizes and counts must be positive")
    slope, _ = np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(np.asarray(counts, dtype=float)), 1)
    logger.debug("Fitted growth exponent %.4f over %d sizes", slope, len(sizes))
    return float(slope)


# ---------------------------------------------------------------------------
# Dispatch used by `predict` and `table`
# ---------------------------------------------------------------------------

PREDICTORS: Dict[str, List[Callable[[int], Prediction]]] = {
    "line": [mu_line],
    "euclidean": [mu_line],
    "circle": [mu_circle, circle_cap_general],
    "equator": [mu_equator],
    "sphere": [mu_equator, sphere_trivial_cap],
    "radial": [mu_radial, unique_midpoint_cap],
    "bipartite": [mu_bipartite, general_cap],
    "unique-midpoint": [unique_midpoint_cap],
    "general": [general_cap],
}


def predictions(space: str, n: int) -> List[Prediction]:
    """Every prediction known for the space key at size n."""
    if space not in PREDICTORS:
        raise InvalidParametersError(
            f"Unknown prediction space {space!r}; choose from {', '.join(sorted(PREDICTORS))}"
        )
    out = [fn(n) for fn in PREDICTORS[space]]
    if space == "circle" and n % 4 == 2:
        out.append(circle_cap_mod2(n))
    if space == "sphere":
        # equator configurations are lower-bound witnesses on the full sphere
        out[0] = out[0].model_copy(update={"kind": PredictionKind.LOWER_BOUND_WITNESS})
    return out


def predict(space: str, n: int) -> Prediction:
    """Headline prediction: the first entry of predictions(space, n)."""
    return predictions(space, n)[0]

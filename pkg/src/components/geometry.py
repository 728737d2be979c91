"""Per-space helper geometry: finite-graph metrics and circle/equator helpers.

Circle positions are turns in [0, 1); C(a, b) is the open counterclockwise
arc from a to b and M(a, b) its midpoint.
"""
import logging
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from src.models.space import EquatorPoint
from src.utils.errors import InvalidInputError, NotAMetricError
from src.utils.exact import reduce_turn

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class DistanceMatrix(BaseModel):
    """Dense all-pairs shortest-path table of a connected graph."""

    model_config = ConfigDict(frozen=True)

    n: int
    entries: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise ValueError("Distance matrix must be n x n")
        for i in range(self.n):
            if self.entries[i][i] != 0:
                raise ValueError(f"Non-zero diagonal entry at {i}")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"Asymmetric entries at ({i}, {j})")
        return self

    def get(self, u: int, v: int) -> int:
        return self.entries[u][v]


def _bfs_levels(adjacency: List[List[int]], source: int) -> List[int]:
    levels = [-1] * len(adjacency)
    levels[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if levels[w] < 0:
                levels[w] = levels[v] + 1
                queue.append(w)
    return levels


def graph_apsp(edges: Iterable[Tuple[int, int]], vertex_count: int) -> DistanceMatrix:
    """BFS from every vertex; raises NotAMetricError for disconnected graphs."""
    return _graph_apsp_cached(tuple((u, v) for u, v in edges), vertex_count)


@lru_cache(maxsize=64)
def _graph_apsp_cached(edges: Tuple[Tuple[int, int], ...], vertex_count: int) -> DistanceMatrix:
    if vertex_count < 1:
        raise NotAMetricError("A graph metric needs at least one vertex")
    adjacency: List[List[int]] = [[] for _ in range(vertex_count)]
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise NotAMetricError(f"Edge ({u}, {v}) references a missing vertex")
        if u == v:
            raise NotAMetricError(f"Self-loop at vertex {u}")
        adjacency[u].append(v)
        adjacency[v].append(u)

    rows = []
    for source in range(vertex_count):
        levels = _bfs_levels(adjacency, source)
        if min(levels) < 0:
            unreachable = levels.index(-1)
            raise NotAMetricError(
                f"Graph is disconnected: vertex {unreachable} unreachable from {source}"
            )
        rows.append(tuple(levels))

    logger.debug("Computed APSP for graph with %d vertices, %d edges", vertex_count, len(edges))
    return DistanceMatrix(n=vertex_count, entries=tuple(rows))


# ---------------------------------------------------------------------------
# Circle geometry
# ---------------------------------------------------------------------------

def ccw_length(a: Fraction, b: Fraction) -> Fraction:
    """Length in turns of the counterclockwise walk from a to b."""
    return reduce_turn(b - a)


def arc_distance(s: Fraction, t: Fraction) -> Fraction:
    d = abs(reduce_turn(s) - reduce_turn(t))
    return min(d, 1 - d)


def in_open_arc(x: Fraction, a: Fraction, b: Fraction) -> bool:
    """True iff x lies in the open counterclockwise arc C(a, b)."""
    offset = ccw_length(a, x)
    return 0 < offset < ccw_length(a, b)


def arc_midpoint(a: Fraction, b: Fraction) -> Fraction:
    """M(a, b): midpoint of the counterclockwise arc from a to b."""
    a, b = reduce_turn(a), reduce_turn(b)
    if a == b:
        raise InvalidInputError("Arc midpoint needs two distinct turns")
    return reduce_turn(a + ccw_length(a, b) / 2)


def rotate(t: Fraction, by: Fraction) -> Fraction:
    return reduce_turn(t + by)


def reflect(t: Fraction, axis: Fraction) -> Fraction:
    """Reflection across the diameter through the turn `axis`."""
    return reduce_turn(2 * axis - t)


def antipode(t: Fraction) -> Fraction:
    return reduce_turn(t + HALF)


def rho(n: int) -> Fraction:
    """Turn of the rotation by the angle pi/n."""
    return Fraction(1, 2 * n)


def is_antipodal(a: Fraction, b: Fraction) -> bool:
    return arc_distance(a, b) == HALF


def equator_embed(t: Fraction) -> EquatorPoint:
    return EquatorPoint(turn=t)

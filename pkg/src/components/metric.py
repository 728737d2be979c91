"""Distance function and the 3-AP predicate for every supported space.

All distances are exact Fractions. Euclidean distances are returned SQUARED
(squared distance is not a metric); the progression test compensates by
comparing d2(a, c) against 4 * d2(a, b) instead of 2 * d(a, b).
"""
import logging
from fractions import Fraction
from typing import Sequence

from src.components.geometry import arc_distance, graph_apsp
from src.models.space import Space, SpaceKind
from src.utils.errors import InvalidInputError
from src.utils.exact import ExactScalar

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


def _line(space, p, q):
    return abs(p.x - q.x)


def _euclidean_squared(space, p, q):
    return sum(((a - b) ** 2 for a, b in zip(p.coords, q.coords)), Fraction(0))


def _circle(space, p, q):
    return arc_distance(p.turn, q.turn)


def _equator_poles(space, p, q):
    # units: turns of the great circle
    if p.is_pole and q.is_pole:
        return Fraction(0) if p.pole == q.pole else HALF
    if p.is_pole or q.is_pole:
        return QUARTER
    return arc_distance(p.turn, q.turn)


def _regular_tree(space, p, q):
    common = 0
    for a, b in zip(p.path, q.path):
        if a != b:
            break
        common += 1
    return Fraction(p.depth + q.depth - 2 * common)


def _lattice(space, p, q):
    return Fraction(sum(abs(a - b) for a, b in zip(p.coords, q.coords)))


def _finite_graph(space, p, q):
    return Fraction(graph_apsp(space.edges or (), space.vertex_count).get(p.vertex, q.vertex))


def _radial_plane(space, p, q):
    if p.turn == q.turn or p.radius == 0 or q.radius == 0:
        return abs(p.radius - q.radius)
    # opposite rays through the origin give |z - w| = |z| + |w| as well
    return p.radius + q.radius


def _complete_bipartite(space, p, q):
    if p == q:
        return Fraction(0)
    return Fraction(2) if p.side == q.side else Fraction(1)


_DISTANCES = {
    SpaceKind.LINE: _line,
    SpaceKind.EUCLIDEAN: _euclidean_squared,
    SpaceKind.CIRCLE: _circle,
    SpaceKind.EQUATOR_POLES: _equator_poles,
    SpaceKind.REGULAR_TREE: _regular_tree,
    SpaceKind.LATTICE: _lattice,
    SpaceKind.FINITE_GRAPH: _finite_graph,
    SpaceKind.RADIAL_PLANE: _radial_plane,
    SpaceKind.COMPLETE_BIPARTITE: _complete_bipartite,
}


def distance(space: Space, p, q) -> ExactScalar:
    """Exact distance between p and q (squared for Euclidean spaces)."""
    space.check_point(p)
    space.check_point(q)
    return _DISTANCES[space.kind](space, p, q)


def relation_holds(d_ab: ExactScalar, d_bc: ExactScalar, d_ac: ExactScalar, factor: int = 2) -> bool:
    """d(a,b) = d(b,c) and d(a,c) = factor * d(a,b); factor is 4 on squared distances."""
    return d_ab == d_bc and d_ac == factor * d_ab


def is_ap3(space: Space, a, b, c) -> bool:
    """Whether (a, b, c) is a 3-term arithmetic progression in the space."""
    return relation_holds(
        distance(space, a, b),
        distance(space, b, c),
        distance(space, a, c),
        space.relation_factor,
    )


def is_collinear(points: Sequence) -> bool:
    """Exact collinearity test for Euclidean points (rational coordinates)."""
    if len(points) <= 2:
        return True
    origin = points[0].coords
    direction = None
    for p in points[1:]:
        if p.coords != origin:
            direction = tuple(a - b for a, b in zip(p.coords, origin))
            break
    if direction is None:
        return True
    for p in points:
        w = tuple(a - b for a, b in zip(p.coords, origin))
        for i in range(len(direction)):
            for j in range(i + 1, len(direction)):
                if direction[i] * w[j] != direction[j] * w[i]:
                    return False
    return True

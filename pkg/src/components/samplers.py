"""Seeded random point sets for audits and oracle comparisons.

Every sampler draws from an explicit `random.Random`, so a seed fixes the
whole sequence of sets.
"""
import itertools
import logging
import random
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from src.components.constructions import lattice_ball, tree_ball
from src.models.space import (
    BipartitePoint, CirclePoint, EquatorPoint, EuclideanPoint, GraphPoint, LinePoint,
    PointSet, Pole, RadialPoint, Side, Space, SpaceKind,
)
from src.utils.errors import InvalidParametersError

logger = logging.getLogger(__name__)

CIRCLE_DENOMINATORS: Tuple[int, ...] = (8, 12, 16, 24)


def turn_pool(denominators: Sequence[int]) -> List[Fraction]:
    return sorted({Fraction(k, q) for q in denominators for k in range(q)})


def _sample(rng: random.Random, pool: Sequence, n: int, what: str) -> list:
    if n > len(pool):
        raise InvalidParametersError(f"Cannot draw {n} distinct {what} from a pool of {len(pool)}")
    return rng.sample(list(pool), n)


def random_circle_set(
    rng: random.Random, n: int, denominators: Sequence[int] = CIRCLE_DENOMINATORS
) -> PointSet:
    """n distinct rational turns whose denominators divide one of `denominators`."""
    turns = _sample(rng, turn_pool(denominators), n, "turns")
    return PointSet(space=Space.circle(), points=tuple(CirclePoint(turn=t) for t in turns))


def random_line_set(rng: random.Random, n: int) -> PointSet:
    pool = [Fraction(k, 2) for k in range(-2 * n - 2, 2 * n + 3)]
    xs = _sample(rng, pool, n, "line points")
    return PointSet(space=Space.line(), points=tuple(LinePoint(x=x) for x in xs))


def random_planar_set(rng: random.Random, n: int, grid: int = 6, dim: int = 2) -> PointSet:
    """n distinct points of the integer grid {0..grid-1}^dim."""
    pool = list(itertools.product(range(grid), repeat=dim))
    coords = _sample(rng, pool, n, "grid points")
    return PointSet(space=Space.euclidean(dim), points=tuple(EuclideanPoint(coords=c) for c in coords))


def random_euclidean_set(rng: random.Random, n: int) -> PointSet:
    dim = rng.choice([1, 2, 3])
    grid = 2
    while grid ** dim < 2 * n:
        grid += 1
    return random_planar_set(rng, n, grid=grid, dim=dim)


def random_equator_set(rng: random.Random, n: int) -> PointSet:
    pool: List[EquatorPoint] = [EquatorPoint(pole=Pole.NORTH), EquatorPoint(pole=Pole.SOUTH)]
    denominators = CIRCLE_DENOMINATORS if n <= 32 else CIRCLE_DENOMINATORS + (48,)
    pool += [EquatorPoint(turn=t) for t in turn_pool(denominators)]
    points = _sample(rng, pool, n, "equator points")
    return PointSet(space=Space.equator_poles(), points=tuple(points))


def random_tree_set(rng: random.Random, n: int) -> PointSet:
    degree = rng.choice([2, 3, 4])
    depth = 0
    ball = tree_ball(degree, depth)
    while len(ball) < n:
        depth += 1
        ball = tree_ball(degree, depth)
    points = _sample(rng, ball.points, n, "tree vertices")
    return ball.with_points(points)


def random_lattice_set(rng: random.Random, n: int) -> PointSet:
    dim = rng.choice([1, 2, 3])
    radius = 0
    ball = lattice_ball(dim, radius)
    while len(ball) < n:
        radius += 1
        ball = lattice_ball(dim, radius)
    points = _sample(rng, ball.points, n, "lattice points")
    return ball.with_points(points)


def random_connected_graph(rng: random.Random, vertex_count: int, extra_edge_probability: float = 0.2) -> Space:
    """Random spanning tree plus independent extra edges; never duplicates an edge."""
    edges = set()
    for v in range(1, vertex_count):
        u = rng.randrange(v)
        edges.add((u, v))
    for u, v in itertools.combinations(range(vertex_count), 2):
        if (u, v) not in edges and rng.random() < extra_edge_probability:
            edges.add((u, v))
    return Space.finite_graph(vertex_count, sorted(edges))


def random_graph_set(rng: random.Random, n: int, extra_edge_probability: float = 0.2) -> PointSet:
    vertex_count = max(1, n + rng.randrange(0, 4))
    space = random_connected_graph(rng, vertex_count, extra_edge_probability)
    vertices = _sample(rng, range(vertex_count), n, "vertices")
    return PointSet(space=space, points=tuple(GraphPoint(vertex=v) for v in vertices))


def random_radial_set(rng: random.Random, n: int) -> PointSet:
    radii = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]
    pool = {RadialPoint(radius=r, turn=Fraction(k, 8)) for r in radii for k in range(8)}
    ordered = sorted(pool, key=lambda p: (p.radius, p.turn))
    points = _sample(rng, ordered, n, "radial points")
    return PointSet(space=Space.radial_plane(), points=tuple(points))


def random_bipartite_set(rng: random.Random, n: int) -> PointSet:
    pool = [BipartitePoint(side=side, index=i) for side in Side for i in range(n)]
    points = _sample(rng, pool, n, "bipartite points")
    return PointSet(space=Space.complete_bipartite(), points=tuple(points))


def random_point_set(rng: random.Random, kind: SpaceKind, n: int) -> PointSet:
    """A random n-point set of the given space kind."""
    if kind == SpaceKind.CIRCLE:
        denominators = CIRCLE_DENOMINATORS if n <= 32 else CIRCLE_DENOMINATORS + (48,)
        return random_circle_set(rng, n, denominators)
    return _BY_KIND[kind](rng, n)


_BY_KIND = {
    SpaceKind.LINE: random_line_set,
    SpaceKind.EUCLIDEAN: random_euclidean_set,
    SpaceKind.EQUATOR_POLES: random_equator_set,
    SpaceKind.REGULAR_TREE: random_tree_set,
    SpaceKind.LATTICE: random_lattice_set,
    SpaceKind.FINITE_GRAPH: random_graph_set,
    SpaceKind.RADIAL_PLANE: random_radial_set,
    SpaceKind.COMPLETE_BIPARTITE: random_bipartite_set,
}


def sampler(kind: SpaceKind, sizes: Sequence[int]) -> Callable[[random.Random], PointSet]:
    """Sampler drawing a size from `sizes`, then a random set of that size."""
    sizes = list(sizes)

    def draw(rng: random.Random) -> PointSet:
        return random_point_set(rng, kind, rng.choice(sizes))

    return draw


def random_tree_graph_set(rng: random.Random, n: int) -> PointSet:
    """Vertices of a random tree graph, a space with unique midpoints."""
    return random_graph_set(rng, n, extra_edge_probability=0.0)


def random_full_graph_set(rng: random.Random, n: int) -> PointSet:
    """Every vertex of a random connected n-vertex graph."""
    space = random_connected_graph(rng, n)
    return PointSet(space=space, points=tuple(GraphPoint(vertex=v) for v in range(n)))


def mixed_sampler(
    draws: Sequence[Callable[[random.Random, int], PointSet]], sizes: Sequence[int]
) -> Callable[[random.Random], PointSet]:
    """Sampler picking one of `draws` and a size from `sizes` per trial."""
    draws, sizes = list(draws), list(sizes)

    def draw(rng: random.Random) -> PointSet:
        fn = rng.choice(draws)
        return fn(rng, rng.choice(sizes))

    return draw

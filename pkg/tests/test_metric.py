import itertools
import random
from fractions import Fraction

import pytest

from src.components.metric import distance, is_ap3, is_collinear
from src.models.space import (
    BipartitePoint, CirclePoint, EquatorPoint, EuclideanPoint, LatticePoint, LinePoint,
    Pole, RadialPoint, Side, Space, SpaceKind, TreePoint,
)
from src.components.samplers import random_point_set
from src.utils.errors import InvalidInputError
from src.utils.exact import ExactScalar

F = Fraction


def test_circle_distance_wraps_around():
    assert distance(Space.circle(), CirclePoint(turn=0), CirclePoint(turn=F(3, 4))) == F(1, 4)


def test_lattice_distance_is_l1():
    space = Space.lattice(2)
    assert distance(space, LatticePoint(coords=(0, 0)), LatticePoint(coords=(2, 2))) == 4


def test_radial_distance_off_a_common_line():
    space = Space.radial_plane()
    p = RadialPoint(radius=1, turn=0)
    q = RadialPoint(radius=1, turn=F(1, 3))
    assert distance(space, p, q) == 2


def test_radial_distance_along_lines_through_origin():
    space = Space.radial_plane()
    origin = RadialPoint(radius=0, turn=F(1, 5))
    assert origin.turn == 0, "radius 0 is canonicalized to turn 0"
    assert distance(space, RadialPoint(radius=3, turn=F(1, 8)), RadialPoint(radius=1, turn=F(1, 8))) == 2
    assert distance(space, RadialPoint(radius=2, turn=F(1, 7)), origin) == 2
    assert distance(space, RadialPoint(radius=1, turn=0), RadialPoint(radius=2, turn=F(1, 2))) == 3


def test_equator_pole_distances():
    space = Space.equator_poles()
    north, south = EquatorPoint(pole=Pole.NORTH), EquatorPoint(pole=Pole.SOUTH)
    assert distance(space, north, south) == F(1, 2)
    assert distance(space, north, EquatorPoint(turn=F(1, 3))) == F(1, 4)
    assert distance(space, EquatorPoint(turn=0), EquatorPoint(turn=F(7, 8))) == F(1, 8)


def test_tree_distance_through_common_ancestor():
    space = Space.regular_tree(3)
    assert distance(space, TreePoint(path=(0, 1)), TreePoint(path=(0, 0))) == 2
    assert distance(space, TreePoint(path=(0, 1)), TreePoint(path=(2,))) == 3
    assert distance(space, TreePoint(path=()), TreePoint(path=(1, 0, 1))) == 3


def test_bipartite_distances():
    space = Space.complete_bipartite()
    left0, left1 = BipartitePoint(side=Side.LEFT, index=0), BipartitePoint(side=Side.LEFT, index=1)
    right0 = BipartitePoint(side=Side.RIGHT, index=0)
    assert distance(space, left0, left1) == 2
    assert distance(space, left0, right0) == 1
    assert distance(space, right0, right0) == 0


def test_euclidean_distance_is_squared():
    space = Space.euclidean(2)
    assert distance(space, EuclideanPoint(coords=(0, 0)), EuclideanPoint(coords=(3, 4))) == 25


def test_kind_mismatch_is_rejected():
    with pytest.raises(InvalidInputError):
        distance(Space.line(), LinePoint(x=0), CirclePoint(turn=0))


def test_tree_child_index_out_of_range_is_rejected():
    with pytest.raises(InvalidInputError):
        distance(Space.regular_tree(3), TreePoint(path=(0, 2)), TreePoint(path=()))


def test_is_ap3_examples():
    assert is_ap3(Space.line(), LinePoint(x=0), LinePoint(x=1), LinePoint(x=2))
    assert is_ap3(Space.circle(), CirclePoint(turn=0), CirclePoint(turn=F(1, 4)), CirclePoint(turn=F(1, 2)))
    lattice = Space.lattice(2)
    assert is_ap3(lattice, *(LatticePoint(coords=(k, k)) for k in range(3)))
    assert is_ap3(Space.line(), LinePoint(x=5), LinePoint(x=5), LinePoint(x=5)), "constant triples count"
    assert not is_ap3(Space.line(), LinePoint(x=0), LinePoint(x=1), LinePoint(x=3))


@pytest.mark.parametrize("kind", list(SpaceKind))
def test_distance_symmetry_and_identity(kind):
    rng = random.Random(11)
    for _ in range(10):
        point_set = random_point_set(rng, kind, 6)
        points = point_set.points
        for p, q in itertools.product(points, repeat=2):
            d = distance(point_set.space, p, q)
            assert d == distance(point_set.space, q, p)
            assert (d == 0) == (p == q), f"zero distance must mean equal points in {kind.value}"


@pytest.mark.parametrize("kind", list(SpaceKind))
def test_is_ap3_reversal_symmetry(kind):
    rng = random.Random(5)
    point_set = random_point_set(rng, kind, 7)
    for a, b, c in itertools.product(point_set.points, repeat=3):
        assert is_ap3(point_set.space, a, b, c) == is_ap3(point_set.space, c, b, a)


def test_euclidean_ap3_is_the_midpoint_relation():
    rng = random.Random(3)
    space = Space.euclidean(2)
    for _ in range(300):
        a, c = (EuclideanPoint(coords=(F(rng.randint(-6, 6), 2), F(rng.randint(-6, 6), 2))) for _ in range(2))
        if rng.random() < 0.5:
            b = EuclideanPoint(coords=tuple((x + y) / 2 for x, y in zip(a.coords, c.coords)))
        else:
            b = EuclideanPoint(coords=(F(rng.randint(-6, 6), 2), F(rng.randint(-6, 6), 2)))
        midpoint = all(2 * y == x + z for x, y, z in zip(a.coords, b.coords, c.coords))
        assert is_ap3(space, a, b, c) == midpoint


def test_lattice_ap3_matches_sign_characterization():
    space = Space.lattice(2)
    box = [LatticePoint(coords=v) for v in itertools.product(range(-3, 4), repeat=2)]
    for a, b, c in itertools.product(box, repeat=3):
        between = all((bi - ai) * (bi - ci) <= 0 for ai, bi, ci in zip(a.coords, b.coords, c.coords))
        equal_legs = sum(abs(x - y) for x, y in zip(a.coords, b.coords)) == sum(
            abs(x - y) for x, y in zip(b.coords, c.coords)
        )
        assert is_ap3(space, a, b, c) == (between and equal_legs), f"{a.coords} {b.coords} {c.coords}"


def test_circle_ap3_invariant_under_rotation_and_reflection():
    rng = random.Random(8)
    space = Space.circle()
    for _ in range(300):
        turns = [F(rng.randrange(16), 16) for _ in range(3)]
        offset = F(rng.randrange(48), 48)
        base = is_ap3(space, *(CirclePoint(turn=t) for t in turns))
        assert base == is_ap3(space, *(CirclePoint(turn=t + offset) for t in turns))
        assert base == is_ap3(space, *(CirclePoint(turn=-t) for t in turns))


def test_is_collinear():
    line = [EuclideanPoint(coords=(k, 2 * k + 1)) for k in range(4)]
    assert is_collinear(line)
    assert not is_collinear(line + [EuclideanPoint(coords=(0, 0))])
    assert is_collinear([EuclideanPoint(coords=(1, 1))])


@pytest.mark.parametrize("kind", list(SpaceKind))
def test_distances_are_exact_scalars(kind):
    point_set = random_point_set(random.Random(5), kind, 4)
    for p, q in itertools.product(point_set.points, repeat=2):
        assert isinstance(distance(point_set.space, p, q), ExactScalar)

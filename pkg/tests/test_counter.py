import random
from fractions import Fraction

import pytest

from src.components import constructions
from src.components.counter import (
    circle_pairs, count, count_ap3, count_ap3_grouped, count_circle, distance_table,
    equator_decomposition, pair_weight_profile, subset_total,
)
from src.components.samplers import random_circle_set, random_point_set
from src.models.ap3_report import Ap3Report
from src.models.space import CirclePoint, EquatorPoint, PointSet, Pole, Space, SpaceKind
from src.utils.errors import InvalidInputError

F = Fraction


def _circle(*turns):
    return constructions.circle_set([F(t) for t in turns])


def test_count_examples():
    assert count_ap3(constructions.line_ap(3)).total == 5
    assert count_ap3(constructions.evenly_spread(8)).total == 40
    assert count_ap3(constructions.line_ap(1)).total == 1
    assert count_ap3(constructions.tree_ball(3, 1)).total == 10


def test_empty_set_counts_zero():
    report = count_ap3(constructions.line_ap(0))
    assert report.total == 0 and report.weights == []


def test_weights_are_middle_counts():
    report = count_ap3(constructions.line_ap(3))
    assert report.weights == [1, 3, 1]
    assert report.to_output() == {"n": 3, "total": 5, "weights": [1, 3, 1]}


def test_grouped_counter_examples():
    assert count_ap3_grouped(constructions.evenly_spread(8)).total == 40
    assert count_ap3_grouped(constructions.lattice_ball(2, 1)).total == 17
    rng = random.Random(21)
    for _ in range(50):
        point_set = random_circle_set(rng, 8)
        assert count_ap3_grouped(point_set) == count_ap3(point_set)


def test_grouped_counter_matches_triple_scan_on_all_kinds():
    rng = random.Random(1729)
    kinds = list(SpaceKind)
    for trial in range(500):
        kind = kinds[trial % len(kinds)]
        n = rng.randint(1, 40)
        point_set = random_point_set(rng, kind, n)
        naive, grouped = count_ap3(point_set), count_ap3_grouped(point_set)
        assert naive == grouped, f"trial {trial}: {kind.value} with {n} points"


def test_report_parity_is_enforced():
    with pytest.raises(ValueError):
        Ap3Report(total=4, weights=[1, 3, 0])
    with pytest.raises(ValueError):
        Ap3Report(total=7, weights=[3, 3])
    with pytest.raises(ValueError):
        Ap3Report(total=5, weights=[1, 3])


def test_parity_on_random_sets():
    rng = random.Random(99)
    for kind in SpaceKind:
        for n in range(1, 12):
            report = count(random_point_set(rng, kind, n))
            assert (report.total - report.n) % 2 == 0
            assert all(w % 2 == 1 for w in report.weights)


@pytest.mark.parametrize("workers", [1, 2, 8])
def test_counting_is_independent_of_thread_count(workers):
    point_set = constructions.f_plus2(12)
    assert count_ap3(point_set, workers=workers) == count_ap3(point_set, workers=1)
    assert count_ap3_grouped(point_set, workers=workers) == count_ap3(point_set, workers=1)


def test_count_dispatches_on_threshold():
    small, large = constructions.evenly_spread(16), constructions.lattice_ball(2, 6)
    assert len(large) > 64
    assert count(small) == count_ap3(small)
    assert count(large) == count_ap3_grouped(large)


def test_subset_total_matches_count_of_the_subset():
    ground = constructions.evenly_spread(12)
    table = distance_table(ground)
    subset = [0, 3, 5, 6, 9]
    assert subset_total(table, subset, 2) == count(ground.subset(subset)).total


def test_circle_pairs_evenly_spread_four():
    pairs = circle_pairs(constructions.evenly_spread(4))
    assert sorted(pairs.pairs) == [(0, 2), (1, 3)]
    assert sorted(pairs.pairs0) == [(0, 2), (1, 3)]


def test_circle_pairs_three_generic_points():
    pairs = circle_pairs(_circle(0, F(1, 8), F(3, 8)))
    assert len(pairs.pairs) == 3
    assert pairs.pairs0 == []


def test_circle_pairs_two_antipodal_points():
    pairs = circle_pairs(_circle(0, F(1, 2)))
    assert pairs.pairs == [(0, 1)]
    assert pairs.pairs0 == [], "arc midpoints are absent"


def test_circle_pairs_errors():
    with pytest.raises(InvalidInputError):
        circle_pairs(_circle(0))
    with pytest.raises(InvalidInputError):
        circle_pairs(constructions.line_ap(3))


def test_every_point_lies_in_nu_pairs():
    rng = random.Random(12)
    for _ in range(100):
        n = rng.randint(2, 14)
        point_set = random_circle_set(rng, n)
        pairs = circle_pairs(point_set).pairs
        nu = 1 if n % 2 == 0 else 2
        assert len(pairs) * 2 == nu * n
        for i in range(n):
            assert sum(1 for p in pairs if i in p) == nu


def test_count_circle_attaches_diagnostics():
    report = count_circle(constructions.evenly_spread(8))
    assert report.total == 40
    assert report.pairs is not None and len(report.pairs.pairs) == 4


def test_pair_weight_profile_on_evenly_spread_four():
    profile = pair_weight_profile(constructions.evenly_spread(4))
    assert [entry["half_sum"] for entry in profile] == [3, 3]
    assert all(entry["in_pairs0"] for entry in profile)


def test_pair_weight_bound_on_random_circle_sets():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(2, 12)
        point_set = random_circle_set(rng, n)
        for entry in pair_weight_profile(point_set):
            assert entry["half_sum"] <= n // 2 + 1
            if n % 2 == 0 and entry["half_sum"] == n // 2 + 1:
                assert entry["in_pairs0"], f"{entry} in {point_set}"


@pytest.mark.parametrize("n", range(3, 17))
def test_equator_decomposition_matches_direct_count(n):
    config = constructions.equator_config(n)
    assert equator_decomposition(config) == count(config).total


def test_equator_decomposition_with_one_pole():
    points = (EquatorPoint(pole=Pole.NORTH),) + tuple(EquatorPoint(turn=t) for t in (0, F(1, 4), F(1, 2)))
    point_set = PointSet(space=Space.equator_poles(), points=points)
    assert equator_decomposition(point_set) == 8
    assert count(point_set).total == 8


def test_equator_decomposition_on_random_sets():
    rng = random.Random(17)
    for _ in range(100):
        point_set = random_point_set(rng, SpaceKind.EQUATOR_POLES, rng.randint(1, 12))
        assert equator_decomposition(point_set) == count(point_set).total


def test_equator_decomposition_requires_equator_space():
    with pytest.raises(InvalidInputError):
        equator_decomposition(PointSet(space=Space.circle(), points=(CirclePoint(turn=0),)))


def test_graph_distance_table_looks_up_the_metric_once(monkeypatch):
    from src.components import counter

    calls = []
    original = counter.graph_apsp

    def tracked(edges, vertex_count):
        calls.append(vertex_count)
        return original(edges, vertex_count)

    monkeypatch.setattr(counter, "graph_apsp", tracked)
    path = constructions.path_graph(30)
    table = distance_table(path)
    assert calls == [30]
    assert table[3][17] == 14
    assert count(path).total == (30 * 30 + 1) // 2
    assert len(calls) == 2

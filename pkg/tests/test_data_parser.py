import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.components import constructions
from src.components.counter import count
from src.components.data_parser import PointSetParser, dump_witnesses
from src.models.space import EuclideanPoint, LinePoint, PointSet, Space
from src.utils.errors import PointSetParseError

parser = PointSetParser()


@pytest.mark.parametrize("point_set", [
    PointSet(space=Space.line(), points=(LinePoint(x=Fraction(-1, 3)), LinePoint(x=2))),
    PointSet(space=Space.euclidean(2), points=(
        EuclideanPoint(coords=(Fraction(1, 2), 0)), EuclideanPoint(coords=(3, -1)),
    )),
    constructions.circle_set(["1/3", "1/2", "5/7"]),
    constructions.equator_config(7),
    constructions.tree_ball(3, 2),
    constructions.lattice_ball(2, 1),
    constructions.star_graph(4),
    constructions.radial_star(5),
    constructions.bipartite_split(2, 3),
], ids=lambda ps: ps.space.kind.value)
def test_round_trip_preserves_points_and_count(point_set):
    replay = parser.loads(parser.dumps(point_set))
    assert replay == point_set
    assert count(replay).total == count(point_set).total


def test_scalars_are_written_as_exact_strings():
    assert parser.dump(constructions.line_ap(2)) == {"space": {"kind": "line"}, "points": ["0", "1"]}
    assert parser.dump(constructions.evenly_spread(4))["points"] == ["0", "1/4", "1/2", "3/4"]
    assert parser.dump(constructions.equator_config(4))["points"][:2] == ["N", "S"]


def test_turns_are_reduced_on_parse():
    point_set = parser.loads('{"space": {"kind": "circle"}, "points": ["5/4", "-1/4"]}')
    assert [p.turn for p in point_set.points] == [Fraction(1, 4), Fraction(3, 4)]


def test_malformed_json_reports_byte_offset():
    with pytest.raises(PointSetParseError) as info:
        parser.loads('{"space": oops}')
    assert info.value.offset == 10


def test_byte_offset_counts_utf8_bytes():
    with pytest.raises(PointSetParseError) as info:
        parser.loads('{"é": oops}')
    assert info.value.offset == 7


@pytest.mark.parametrize("document,path", [
    ({"space": {"kind": "circle"}, "points": ["0", "x"]}, "$.points[1]"),
    ({"space": {"kind": "torus"}, "points": []}, "$.space.kind"),
    ({"space": {"kind": "circle"}, "points": ["1/2", "3/2"]}, "$.points"),
    ({"space": {"kind": "circle"}, "points": "0"}, "$.points"),
    ({"space": {"kind": "lattice", "dim": 2}, "points": [[0, 0], [1]]}, "$.points[1]"),
    ({"space": {"kind": "regular_tree", "degree": 3}, "points": [[], [3]]}, "$.points[1]"),
    ({"space": {"kind": "euclidean"}, "points": []}, "$.space"),
    ({"points": []}, "$.space"),
    ({"space": {"kind": "finite_graph", "vertex_count": 2, "edges": [[0, 1.9]]}, "points": [0]},
     "$.space.edges[0][1]"),
    ({"space": {"kind": "finite_graph", "vertex_count": 2, "edges": [[0, "1"]]}, "points": [0]},
     "$.space.edges[0][1]"),
])
def test_schema_errors_report_json_path(document, path):
    with pytest.raises(PointSetParseError) as info:
        parser.loads(json.dumps(document))
    assert info.value.path == path
    assert info.value.offset is None


def test_disconnected_graph_is_rejected():
    document = {"space": {"kind": "finite_graph", "vertex_count": 3, "edges": [[0, 1]]}, "points": [0]}
    with pytest.raises(PointSetParseError) as info:
        parser.loads(json.dumps(document))
    assert info.value.path == "$.space"


def test_file_round_trip(tmp_path):
    path = tmp_path / "sets" / "f8.json"
    parser.write_file(constructions.evenly_spread(8), path)
    assert count(parser.load_file(path)).total == 40


def test_missing_file_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        parser.load_file(tmp_path / "absent.json")


def test_dump_witnesses():
    ground = constructions.evenly_spread(8)
    dumped = dump_witnesses(ground, [[0, 2, 4, 6]])
    assert dumped == [{"space": {"kind": "circle"}, "points": ["0", "1/4", "1/2", "3/4"]}]


SAMPLES = Path(__file__).resolve().parent.parent / "data" / "point_sets"


@pytest.mark.parametrize("name,total", [
    ("evenly_spread_8.json", 40),
    ("equator_poles_7.json", 35),
    ("path_graph_6.json", 18),
    ("tree_ball_3_2.json", 58),
])
def test_sample_point_sets(name, total):
    assert count(parser.load_file(SAMPLES / name)).total == total

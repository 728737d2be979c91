import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import ValidationError

from src.models.space import (
    BipartitePoint, CirclePoint, EquatorPoint, EuclideanPoint, GraphPoint,
    LatticePoint, LinePoint, PointSet, Pole, RadialPoint, Side, Space,
    SpaceKind, TreePoint,
)
from src.utils.errors import PointSetParseError
from src.utils.exact import format_scalar, parse_scalar

logger = logging.getLogger(__name__)


def _expect_list(raw: Any, path: str, length: int = None) -> list:
    if not isinstance(raw, list):
        raise PointSetParseError(f"Expected an array, got {type(raw).__name__}", path=path)
    if length is not None and len(raw) != length:
        raise PointSetParseError(f"Expected an array of length {length}", path=path)
    return raw


def _expect_int(raw: Any, path: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise PointSetParseError(f"Expected an integer, got {raw!r}", path=path)
    return raw


class PointSetParser:
    """Reads and writes the PointSet JSON file format.

    Document shape: {"space": {"kind": ..., params}, "points": [...]}, every
    exact scalar written as "p/q" (or "p" when q = 1).
    """

    def parse_space(self, raw: Any) -> Space:
        if not isinstance(raw, dict) or "kind" not in raw:
            raise PointSetParseError("Space descriptor must be an object with a 'kind'", path="$.space")
        try:
            kind = SpaceKind(raw["kind"])
        except ValueError:
            raise PointSetParseError(f"Unknown space kind {raw['kind']!r}", path="$.space.kind")

        try:
            if kind == SpaceKind.FINITE_GRAPH:
                edges = _expect_list(raw.get("edges", []), "$.space.edges")
                pairs = [
                    tuple(
                        _expect_int(endpoint, f"$.space.edges[{i}][{k}]")
                        for k, endpoint in enumerate(_expect_list(e, f"$.space.edges[{i}]", 2))
                    )
                    for i, e in enumerate(edges)
                ]
                return Space.finite_graph(raw.get("vertex_count"), pairs)
            params = {k: v for k, v in raw.items() if k in ("dim", "degree")}
            return Space(kind=kind, **params)
        except PointSetParseError:
            raise
        except (ValueError, TypeError) as e:
            raise PointSetParseError(f"Invalid space descriptor: {e}", path="$.space")

    def parse_point(self, space: Space, raw: Any, path: str):
        kind = space.kind
        if kind == SpaceKind.LINE:
            return LinePoint(x=parse_scalar(raw))
        if kind == SpaceKind.EUCLIDEAN:
            return EuclideanPoint(coords=_expect_list(raw, path))
        if kind == SpaceKind.CIRCLE:
            return CirclePoint(turn=parse_scalar(raw))
        if kind == SpaceKind.EQUATOR_POLES:
            if raw in (Pole.NORTH.value, Pole.SOUTH.value):
                return EquatorPoint(pole=Pole(raw))
            return EquatorPoint(turn=parse_scalar(raw))
        if kind == SpaceKind.REGULAR_TREE:
            return TreePoint(path=tuple(_expect_int(c, path) for c in _expect_list(raw, path)))
        if kind == SpaceKind.LATTICE:
            return LatticePoint(coords=tuple(_expect_int(c, path) for c in _expect_list(raw, path)))
        if kind == SpaceKind.FINITE_GRAPH:
            return GraphPoint(vertex=_expect_int(raw, path))
        if kind == SpaceKind.RADIAL_PLANE:
            radius, turn = _expect_list(raw, path, 2)
            return RadialPoint(radius=parse_scalar(radius), turn=parse_scalar(turn))
        side, index = _expect_list(raw, path, 2)
        return BipartitePoint(side=Side(side), index=_expect_int(index, path))

    def parse_point_set(self, raw_json: dict) -> PointSet:
        """Parse a decoded JSON document into a validated PointSet."""
        if not isinstance(raw_json, dict):
            raise PointSetParseError("PointSet document must be a JSON object", path="$")
        space = self.parse_space(raw_json.get("space"))
        raw_points = _expect_list(raw_json.get("points", []), "$.points")

        points = []
        for i, raw in enumerate(raw_points):
            path = f"$.points[{i}]"
            try:
                point = self.parse_point(space, raw, path)
                space.check_point(point)
            except PointSetParseError:
                raise
            except (ValueError, TypeError) as e:
                raise PointSetParseError(f"Invalid point: {e}", path=path)
            points.append(point)

        try:
            point_set = PointSet(space=space, points=tuple(points))
        except ValidationError as e:
            raise PointSetParseError(f"Invalid point set: {e}", path="$.points")
        logger.info("Parsed %s point set with %d points", space.kind.value, len(point_set))
        return point_set

    def loads(self, text: Union[str, bytes]) -> PointSet:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            byte_offset = len(text[:e.pos].encode("utf-8"))
            raise PointSetParseError(f"Malformed JSON: {e.msg}", offset=byte_offset)
        return self.parse_point_set(raw)

    def load_file(self, path: Union[str, Path]) -> PointSet:
        return self.loads(Path(path).read_bytes())

    # -- writing ---------------------------------------------------------------

    def dump_space(self, space: Space) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": space.kind.value}
        if space.dim is not None:
            out["dim"] = space.dim
        if space.degree is not None:
            out["degree"] = space.degree
        if space.kind == SpaceKind.FINITE_GRAPH:
            out["vertex_count"] = space.vertex_count
            out["edges"] = [list(e) for e in space.edges or ()]
        return out

    def dump_point(self, space: Space, p) -> Any:
        kind = space.kind
        if kind == SpaceKind.LINE:
            return format_scalar(p.x)
        if kind == SpaceKind.EUCLIDEAN:
            return [format_scalar(c) for c in p.coords]
        if kind == SpaceKind.CIRCLE:
            return format_scalar(p.turn)
        if kind == SpaceKind.EQUATOR_POLES:
            return p.pole.value if p.is_pole else format_scalar(p.turn)
        if kind == SpaceKind.REGULAR_TREE:
            return list(p.path)
        if kind == SpaceKind.LATTICE:
            return list(p.coords)
        if kind == SpaceKind.FINITE_GRAPH:
            return p.vertex
        if kind == SpaceKind.RADIAL_PLANE:
            return [format_scalar(p.radius), format_scalar(p.turn)]
        return [p.side.value, p.index]

    def dump(self, point_set: PointSet) -> Dict[str, Any]:
        return {
            "space": self.dump_space(point_set.space),
            "points": [self.dump_point(point_set.space, p) for p in point_set.points],
        }

    def dumps(self, point_set: PointSet) -> str:
        return json.dumps(self.dump(point_set), indent=2)

    def write_file(self, point_set: PointSet, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(point_set) + "\n", encoding="utf-8")
        logger.info("Wrote %d-point set to %s", len(point_set), path)


def dump_witnesses(point_set: PointSet, witnesses: List[List[int]]) -> List[Dict[str, Any]]:
    parser = PointSetParser()
    return [parser.dump(point_set.subset(w)) for w in witnesses]

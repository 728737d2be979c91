from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.utils.errors import InvalidInputError
from src.utils.exact import parse_scalar, reduce_turn


class SpaceKind(str, Enum):
    LINE = "line"
    EUCLIDEAN = "euclidean"
    CIRCLE = "circle"
    EQUATOR_POLES = "equator_poles"
    REGULAR_TREE = "regular_tree"
    LATTICE = "lattice"
    FINITE_GRAPH = "finite_graph"
    RADIAL_PLANE = "radial_plane"
    COMPLETE_BIPARTITE = "complete_bipartite"


class Pole(str, Enum):
    NORTH = "N"
    SOUTH = "S"


class Side(str, Enum):
    LEFT = "L"
    RIGHT = "R"


class _PointModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class LinePoint(_PointModel):
    x: Fraction

    @field_validator("x", mode="before")
    @classmethod
    def coerce_scalar(cls, v):
        return parse_scalar(v)


class EuclideanPoint(_PointModel):
    coords: Tuple[Fraction, ...]

    @field_validator("coords", mode="before")
    @classmethod
    def coerce_coords(cls, v):
        return tuple(parse_scalar(c) for c in v)


class CirclePoint(_PointModel):
    """A point of S^1 given by its turn t in [0, 1) (angle 2*pi*t)."""

    turn: Fraction

    @field_validator("turn", mode="before")
    @classmethod
    def reduce(cls, v):
        return reduce_turn(parse_scalar(v))


class EquatorPoint(_PointModel):
    """Either an equator point (turn) or one of the two poles."""

    turn: Optional[Fraction] = None
    pole: Optional[Pole] = None

    @field_validator("turn", mode="before")
    @classmethod
    def reduce(cls, v):
        if v is None:
            return None
        return reduce_turn(parse_scalar(v))

    @model_validator(mode="after")
    def exactly_one_location(self):
        if (self.turn is None) == (self.pole is None):
            raise ValueError("Equator point needs exactly one of turn or pole")
        return self

    @property
    def is_pole(self) -> bool:
        return self.pole is not None


class TreePoint(_PointModel):
    """Vertex of the r-regular tree, addressed by its child-index path from the root."""

    path: Tuple[int, ...] = ()

    @field_validator("path")
    @classmethod
    def indices_non_negative(cls, v):
        if any(i < 0 for i in v):
            raise ValueError("Tree child indices must be non-negative")
        return v

    @property
    def depth(self) -> int:
        return len(self.path)


class LatticePoint(_PointModel):
    coords: Tuple[int, ...]


class GraphPoint(_PointModel):
    vertex: int


class RadialPoint(_PointModel):
    """Polar pair of the radial plane; the origin is always stored with turn 0."""

    radius: Fraction
    turn: Fraction = Fraction(0)

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, data):
        if not isinstance(data, dict):
            return data
        radius = parse_scalar(data.get("radius", 0))
        if radius < 0:
            raise ValueError("Radial point radius must be non-negative")
        turn = reduce_turn(parse_scalar(data.get("turn", 0)))
        if radius == 0:
            turn = Fraction(0)
        return {"radius": radius, "turn": turn}


class BipartitePoint(_PointModel):
    side: Side
    index: int

    @field_validator("index")
    @classmethod
    def index_non_negative(cls, v):
        if v < 0:
            raise ValueError("Bipartite point index must be non-negative")
        return v


Point = Union[
    LinePoint, EuclideanPoint, CirclePoint, EquatorPoint, TreePoint,
    LatticePoint, GraphPoint, RadialPoint, BipartitePoint,
]

POINT_TYPES: Dict[SpaceKind, Type[BaseModel]] = {
    SpaceKind.LINE: LinePoint,
    SpaceKind.EUCLIDEAN: EuclideanPoint,
    SpaceKind.CIRCLE: CirclePoint,
    SpaceKind.EQUATOR_POLES: EquatorPoint,
    SpaceKind.REGULAR_TREE: TreePoint,
    SpaceKind.LATTICE: LatticePoint,
    SpaceKind.FINITE_GRAPH: GraphPoint,
    SpaceKind.RADIAL_PLANE: RadialPoint,
    SpaceKind.COMPLETE_BIPARTITE: BipartitePoint,
}


class Space(BaseModel):
    """Descriptor of one supported metric space and its parameters."""

    model_config = ConfigDict(frozen=True)

    kind: SpaceKind
    dim: Optional[int] = None
    degree: Optional[int] = None
    vertex_count: Optional[int] = None
    edges: Optional[Tuple[Tuple[int, int], ...]] = None

    @model_validator(mode="after")
    def check_parameters(self):
        if self.kind in (SpaceKind.EUCLIDEAN, SpaceKind.LATTICE):
            if self.dim is None or self.dim < 1:
                raise ValueError(f"{self.kind.value} space needs dim >= 1")
        if self.kind == SpaceKind.REGULAR_TREE:
            if self.degree is None or self.degree < 2:
                raise ValueError("regular_tree space needs degree >= 2")
        if self.kind == SpaceKind.FINITE_GRAPH:
            if self.vertex_count is None or self.vertex_count < 1:
                raise ValueError("finite_graph space needs vertex_count >= 1")
            seen = set()
            for u, v in self.edges or ():
                if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                    raise ValueError(f"Edge ({u}, {v}) references a missing vertex")
                if u == v:
                    raise ValueError(f"Self-loop at vertex {u}")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise ValueError(f"Duplicate edge {key}")
                seen.add(key)
        return self

    # -- factories ---------------------------------------------------------

    @classmethod
    def line(cls) -> "Space":
        return cls(kind=SpaceKind.LINE)

    @classmethod
    def euclidean(cls, dim: int) -> "Space":
        return cls(kind=SpaceKind.EUCLIDEAN, dim=dim)

    @classmethod
    def circle(cls) -> "Space":
        return cls(kind=SpaceKind.CIRCLE)

    @classmethod
    def equator_poles(cls) -> "Space":
        return cls(kind=SpaceKind.EQUATOR_POLES)

    @classmethod
    def regular_tree(cls, degree: int) -> "Space":
        return cls(kind=SpaceKind.REGULAR_TREE, degree=degree)

    @classmethod
    def lattice(cls, dim: int) -> "Space":
        return cls(kind=SpaceKind.LATTICE, dim=dim)

    @classmethod
    def finite_graph(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Space":
        """Build a graph space; raises NotAMetricError if the graph is disconnected."""
        from src.components.geometry import graph_apsp

        space = cls(
            kind=SpaceKind.FINITE_GRAPH,
            vertex_count=vertex_count,
            edges=tuple(tuple(e) for e in edges),
        )
        graph_apsp(space.edges, space.vertex_count)
        return space

    @classmethod
    def radial_plane(cls) -> "Space":
        return cls(kind=SpaceKind.RADIAL_PLANE)

    @classmethod
    def complete_bipartite(cls) -> "Space":
        return cls(kind=SpaceKind.COMPLETE_BIPARTITE)

    # -- point validation ----------------------------------------------------

    @property
    def point_type(self) -> Type[BaseModel]:
        return POINT_TYPES[self.kind]

    def check_point(self, p) -> None:
        """Raise InvalidInputError unless p is a valid point of this space."""
        if not isinstance(p, self.point_type):
            raise InvalidInputError(
                f"{type(p).__name__} is not a point of a {self.kind.value} space"
            )
        if self.kind in (SpaceKind.EUCLIDEAN, SpaceKind.LATTICE):
            if len(p.coords) != self.dim:
                raise InvalidInputError(
                    f"Point has {len(p.coords)} coordinates, space dim is {self.dim}"
                )
        elif self.kind == SpaceKind.REGULAR_TREE:
            for depth, child in enumerate(p.path):
                limit = self.degree if depth == 0 else self.degree - 1
                if child >= limit:
                    raise InvalidInputError(
                        f"Tree child index {child} at depth {depth + 1} must be < {limit}"
                    )
        elif self.kind == SpaceKind.FINITE_GRAPH:
            if not 0 <= p.vertex < self.vertex_count:
                raise InvalidInputError(
                    f"Vertex {p.vertex} outside 0..{self.vertex_count - 1}"
                )

    @property
    def relation_factor(self) -> int:
        """d(a, c) = factor * d(a, b) in a progression; 4 for squared Euclidean distance."""
        return 4 if self.kind == SpaceKind.EUCLIDEAN else 2


class PointSet(BaseModel):
    """Ordered, duplicate-free list of points of one space."""

    model_config = ConfigDict(frozen=True)

    space: Space
    points: Tuple[Point, ...] = ()

    @model_validator(mode="after")
    def check_points(self):
        seen = set()
        for index, p in enumerate(self.points):
            self.space.check_point(p)
            if p in seen:
                raise ValueError(f"Duplicate point at index {index}")
            seen.add(p)
        return self

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, index: int):
        return self.points[index]

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(space=self.space, points=tuple(self.points[i] for i in indices))

    def with_points(self, points: List) -> "PointSet":
        return PointSet(space=self.space, points=tuple(points))

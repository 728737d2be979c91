"""Generators for the extremal witness sets of every supported space.

Circle families are built from F_n, the evenly spread n-set through turn 0,
and canonicalized to offset 0 / anchor index 0 unless other parameters are
given.
"""
import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

from src.components.geometry import arc_distance, arc_midpoint, equator_embed, rho, rotate
from src.models.construction import ConstructionName, ConstructionSpec
from src.models.space import (
    BipartitePoint, CirclePoint, EquatorPoint, GraphPoint, LatticePoint, LinePoint,
    PointSet, Pole, RadialPoint, Side, Space, TreePoint,
)
from src.utils.errors import InvalidParametersError
from src.utils.exact import parse_scalar, reduce_turn

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParametersError(message)


def _circle(turns: Iterable[Fraction]) -> PointSet:
    return PointSet(space=Space.circle(), points=tuple(CirclePoint(turn=t) for t in turns))


def _family_base(n: int) -> List[Fraction]:
    _require(n > 0 and n % 4 == 0, f"circle families need n positive and divisible by 4, got {n}")
    return [Fraction(k, n) for k in range(n)]


def _index(n: int, value: int, name: str) -> int:
    _require(0 <= value < n, f"{name} must lie in 0..{n - 1}, got {value}")
    return value


def line_ap(n: int) -> PointSet:
    _require(n >= 0, f"line_ap needs n >= 0, got {n}")
    return PointSet(space=Space.line(), points=tuple(LinePoint(x=k) for k in range(n)))


def evenly_spread(n: int, offset: Fraction = Fraction(0)) -> PointSet:
    """F_n rotated by `offset`: turns offset + k/n."""
    _require(n >= 2, f"evenly_spread needs n >= 2, got {n}")
    offset = parse_scalar(offset)
    return _circle(reduce_turn(offset + Fraction(k, n)) for k in range(n))


def circle_set(turns: Iterable) -> PointSet:
    return _circle(parse_scalar(t) for t in turns)


def f_minus1(n: int, drop_index: int = 0) -> PointSet:
    base = _family_base(n)
    _index(n, drop_index, "drop_index")
    return _circle(t for k, t in enumerate(base) if k != drop_index)


def f_minus2(n: int, i: int = 0, j: Optional[int] = None) -> PointSet:
    """F_n without {a, b}, where d(a, b) <= 1/4 and both arc midpoints of a, b lie in F_n."""
    base = _family_base(n)
    j = (i + 2) % n if j is None else j
    _index(n, i, "i")
    _index(n, j, "j")
    _require(i != j, "f_minus2 needs two distinct dropped points")
    a, b = base[i], base[j]
    members = set(base)
    _require(arc_distance(a, b) <= QUARTER, f"condition d(a, b) <= 1/4 fails for a={a}, b={b}")
    _require(
        arc_midpoint(a, b) in members and arc_midpoint(b, a) in members,
        f"condition M(a, b), M(b, a) in F_{n} fails for a={a}, b={b}",
    )
    return _circle(t for k, t in enumerate(base) if k not in (i, j))


def f_plus1(n: int, anchor_index: int = 0) -> PointSet:
    """F_n plus the point a with rho_n(a) equal to the anchor."""
    base = _family_base(n)
    _index(n, anchor_index, "anchor_index")
    return _circle(base + [rotate(base[anchor_index], -rho(n))])


def f_plus2(n: int, anchor_i: int = 0, anchor_j: Optional[int] = None) -> PointSet:
    """F_n plus a, b with rho_n(a), rho_n(b) in F_n and both arc midpoints of a, b in F_n."""
    base = _family_base(n)
    anchor_j = (anchor_i + 1) % n if anchor_j is None else anchor_j
    _index(n, anchor_i, "anchor_i")
    _index(n, anchor_j, "anchor_j")
    _require(anchor_i != anchor_j, "f_plus2 needs two distinct anchors")
    a = rotate(base[anchor_i], -rho(n))
    b = rotate(base[anchor_j], -rho(n))
    members = set(base)
    _require(
        arc_midpoint(a, b) in members and arc_midpoint(b, a) in members,
        f"condition M(a, b), M(b, a) in F_{n} fails for a={a}, b={b}",
    )
    return _circle(base + [a, b])


def tree_ball(r: int, d0: int) -> PointSet:
    """Ball of radius d0 around the root of the r-regular tree, by depth then path."""
    _require(r >= 2, f"tree_ball needs r >= 2, got {r}")
    _require(d0 >= 0, f"tree_ball needs d0 >= 0, got {d0}")
    level = [()]
    paths = [()]
    for depth in range(d0):
        children = r if depth == 0 else r - 1
        level = [path + (c,) for path in level for c in range(children)]
        paths.extend(level)
    return PointSet(space=Space.regular_tree(r), points=tuple(TreePoint(path=p) for p in paths))


def lattice_ball(dim: int, d0: int) -> PointSet:
    """All integer vectors of L1 norm at most d0, sorted by (norm, coordinates)."""
    _require(dim >= 1, f"lattice_ball needs dim >= 1, got {dim}")
    _require(d0 >= 0, f"lattice_ball needs d0 >= 0, got {d0}")
    box = itertools.product(range(-d0, d0 + 1), repeat=dim)
    coords = sorted(
        (v for v in box if sum(abs(c) for c in v) <= d0),
        key=lambda v: (sum(abs(c) for c in v), v),
    )
    return PointSet(space=Space.lattice(dim), points=tuple(LatticePoint(coords=v) for v in coords))


def bipartite_split(n_left: int, n_right: int) -> PointSet:
    _require(n_left >= 0 and n_right >= 0, "bipartite_split needs non-negative side sizes")
    points = [BipartitePoint(side=Side.LEFT, index=i) for i in range(n_left)]
    points += [BipartitePoint(side=Side.RIGHT, index=i) for i in range(n_right)]
    return PointSet(space=Space.complete_bipartite(), points=tuple(points))


def radial_star(n: int) -> PointSet:
    """The origin plus n - 1 unit points at turns k / (n - 1)."""
    _require(n >= 1, f"radial_star needs n >= 1, got {n}")
    points = [RadialPoint(radius=0)]
    points += [RadialPoint(radius=1, turn=Fraction(k, n - 1)) for k in range(n - 1)]
    return PointSet(space=Space.radial_plane(), points=tuple(points))


def equator_base(n: int) -> PointSet:
    """Equator part A0 of the optimal equator-and-poles n-set."""
    _require(n >= 3, f"equator_config needs n >= 3, got {n}")
    if n == 3:
        return _circle([Fraction(0)])
    residue = n % 4
    if residue == 1:
        return f_minus1(n - 1)
    if residue == 3:
        return f_plus1(n - 3)
    return evenly_spread(n - 2)


def equator_config(n: int) -> PointSet:
    """Both poles plus the embedded equator part."""
    base = equator_base(n)
    points = [EquatorPoint(pole=Pole.NORTH), EquatorPoint(pole=Pole.SOUTH)]
    points += [equator_embed(p.turn) for p in base.points]
    return PointSet(space=Space.equator_poles(), points=tuple(points))


def star_graph(n: int) -> PointSet:
    """All vertices of K_{1, n-1}: hub 0 joined to leaves 1..n-1."""
    _require(n >= 1, f"star_graph needs n >= 1, got {n}")
    space = Space.finite_graph(n, [(0, v) for v in range(1, n)])
    return PointSet(space=space, points=tuple(GraphPoint(vertex=v) for v in range(n)))


def path_graph(n: int) -> PointSet:
    _require(n >= 1, f"path_graph needs n >= 1, got {n}")
    space = Space.finite_graph(n, [(v, v + 1) for v in range(n - 1)])
    return PointSet(space=space, points=tuple(GraphPoint(vertex=v) for v in range(n)))


GENERATORS: Dict[ConstructionName, Callable[..., PointSet]] = {
    ConstructionName.LINE_AP: line_ap,
    ConstructionName.EVENLY_SPREAD: evenly_spread,
    ConstructionName.F_MINUS1: f_minus1,
    ConstructionName.F_MINUS2: f_minus2,
    ConstructionName.F_PLUS1: f_plus1,
    ConstructionName.F_PLUS2: f_plus2,
    ConstructionName.TREE_BALL: tree_ball,
    ConstructionName.LATTICE_BALL: lattice_ball,
    ConstructionName.BIPARTITE_SPLIT: bipartite_split,
    ConstructionName.RADIAL_STAR: radial_star,
    ConstructionName.EQUATOR_CONFIG: equator_config,
    ConstructionName.STAR_GRAPH: star_graph,
    ConstructionName.PATH_GRAPH: path_graph,
    ConstructionName.CIRCLE_SET: circle_set,
}


def build(spec: ConstructionSpec) -> PointSet:
    generator = GENERATORS[spec.name]
    try:
        point_set = generator(**spec.params)
    except TypeError as e:
        raise InvalidParametersError(f"Bad parameters for {spec.name.value}: {e}")
    logger.info("Built %s%s with %d points", spec.name.value, spec.params, len(point_set))
    return point_set


def parse_params(name: ConstructionName, pairs: List[str]) -> Dict[str, object]:
    """Turn CLI `key=value` tokens into generator keyword arguments.

    Values are integers except `offset` (an exact turn) and `turns`
    (comma-separated exact turns).
    """
    params: Dict[str, object] = {}
    for token in pairs:
        key, sep, value = token.partition("=")
        _require(bool(sep) and bool(key), f"Expected key=value, got {token!r}")
        try:
            if key == "turns":
                params[key] = [parse_scalar(v) for v in value.split(",") if v.strip()]
            elif key == "offset":
                params[key] = parse_scalar(value)
            else:
                params[key] = int(value)
        except ValueError:
            raise InvalidParametersError(f"Bad value for {key} in {name.value}: {value!r}")
    return params

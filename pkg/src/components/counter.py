"""Ordered 3-AP counting, middle weights and the circle diagnostics.

Distances of a point set are computed once and rescaled by the common
denominator into a plain integer table; the progression relation is scale
free, so the integer table answers every query exactly.
"""
import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from src.components.geometry import antipode, arc_midpoint, graph_apsp, in_open_arc, is_antipodal, reflect
from src.components.metric import distance, relation_holds
from src.config import CONFIG
from src.models.ap3_report import Ap3Report, CirclePairs
from src.models.space import CirclePoint, PointSet, Space, SpaceKind
from src.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def worker_count(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = CONFIG["counting"].get("threads", 1)
    return max(1, int(workers))


def map_ordered(fn, items: Sequence, workers: int) -> list:
    """Map preserving input order, so reductions do not depend on thread count.

    The work is pure Python, so under the GIL `workers` bounds concurrency
    rather than adding CPU parallelism.
    """
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def distance_table(point_set: PointSet) -> IntMatrix:
    """All pairwise distances scaled to integers by their common denominator."""
    points = point_set.points
    if point_set.space.kind == SpaceKind.FINITE_GRAPH:
        # graph distances are integral; the matrix is looked up once per table
        matrix = graph_apsp(point_set.space.edges or (), point_set.space.vertex_count)
        vertices = [p.vertex for p in points]
        return [[matrix.get(u, v) for v in vertices] for u in vertices]
    n = len(points)
    exact: List[List[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = distance(point_set.space, points[i], points[j])
            exact[i][j] = exact[j][i] = d
    scale = 1
    for row in exact:
        for d in row:
            scale = math.lcm(scale, d.denominator)
    return [[d.numerator * (scale // d.denominator) for d in row] for row in exact]


def count_ap3(point_set: PointSet, workers: Optional[int] = None) -> Ap3Report:
    """Reference counter: scans all |A|^3 ordered triples."""
    table = distance_table(point_set)
    factor = point_set.space.relation_factor
    n = len(table)

    def weight(b: int) -> int:
        row_b = table[b]
        w = 0
        for a in range(n):
            d_ab = row_b[a]
            row_a = table[a]
            for c in range(n):
                if relation_holds(d_ab, row_b[c], row_a[c], factor):
                    w += 1
        return w

    weights = map_ordered(weight, list(range(n)), worker_count(workers))
    report = Ap3Report(total=sum(weights), weights=weights)
    logger.debug("Triple scan on %d points: %d progressions", n, report.total)
    return report


def middle_weight(table: IntMatrix, members: Sequence[int], factor: int, b: int) -> int:
    """w(b) within `members`: bucket by distance from b, then match pairs at factor * delta."""
    row_b = table[b]
    buckets: Dict[int, List[int]] = defaultdict(list)
    for x in members:
        if x != b:
            buckets[row_b[x]].append(x)
    w = 1
    for delta, bucket in buckets.items():
        if len(bucket) < 2:
            continue
        target = factor * delta
        for x in bucket:
            row_x = table[x]
            for z in bucket:
                if row_x[z] == target:
                    w += 1
    return w


def subset_total(table: IntMatrix, members: Sequence[int], factor: int) -> int:
    """Progression count of the sub-configuration indexed by `members`."""
    return sum(middle_weight(table, members, factor, b) for b in members)


def _midpoint_weights(point_set: PointSet) -> List[int]:
    index = {p.coords: i for i, p in enumerate(point_set.points)}
    coords = [p.coords for p in point_set.points]
    weights = [1] * len(coords)
    for i, a in enumerate(coords):
        for j in range(i + 1, len(coords)):
            mid = tuple((x + y) / 2 for x, y in zip(a, coords[j]))
            b = index.get(mid)
            if b is not None:
                # (a, b, c) and (c, b, a)
                weights[b] += 2
    return weights


def count_ap3_grouped(point_set: PointSet, workers: Optional[int] = None) -> Ap3Report:
    """Fast counter; Euclidean sets are counted through exact midpoints."""
    if point_set.space.kind == SpaceKind.EUCLIDEAN:
        weights = _midpoint_weights(point_set)
    else:
        table = distance_table(point_set)
        members = list(range(len(table)))
        factor = point_set.space.relation_factor
        weights = map_ordered(
            lambda b: middle_weight(table, members, factor, b), members, worker_count(workers)
        )
    report = Ap3Report(total=sum(weights), weights=weights)
    logger.debug("Grouped count on %d points: %d progressions", len(point_set), report.total)
    return report


def count(point_set: PointSet, workers: Optional[int] = None) -> Ap3Report:
    """Default counter: triple scan for small sets, grouped above the threshold."""
    threshold = CONFIG["counting"].get("grouped_threshold", 64)
    if len(point_set) > threshold:
        return count_ap3_grouped(point_set, workers)
    return count_ap3(point_set, workers)


# ---------------------------------------------------------------------------
# Circle diagnostics
# ---------------------------------------------------------------------------

def _circle_turns(point_set: PointSet) -> List[Fraction]:
    if point_set.space.kind != SpaceKind.CIRCLE:
        raise InvalidInputError(
            f"Circle diagnostics need a circle point set, got {point_set.space.kind.value}"
        )
    return [p.turn for p in point_set.points]


def circle_pairs(point_set: PointSet) -> CirclePairs:
    """Pairs(A): pairs splitting the rest of A evenly (difference at most 1) between the two arcs.

    Pairs0(A): antipodal members of Pairs(A) whose common reflection fixes A
    and whose two arc midpoints lie in A.
    """
    turns = _circle_turns(point_set)
    if len(turns) < 2:
        raise InvalidInputError("Circle pairs need at least two points")
    turn_set = set(turns)

    pairs, pairs0 = [], []
    for i, a in enumerate(turns):
        for j in range(i + 1, len(turns)):
            b = turns[j]
            left = sum(1 for x in turns if in_open_arc(x, a, b))
            right = sum(1 for x in turns if in_open_arc(x, b, a))
            if abs(left - right) > 1:
                continue
            pairs.append((i, j))
            if not is_antipodal(a, b):
                continue
            if {reflect(x, a) for x in turns} != turn_set:
                continue
            if arc_midpoint(a, b) in turn_set and arc_midpoint(b, a) in turn_set:
                pairs0.append((i, j))
    return CirclePairs(pairs=pairs, pairs0=pairs0)


def count_circle(point_set: PointSet, workers: Optional[int] = None) -> Ap3Report:
    """Count a circle set and attach its Pairs/Pairs0 diagnostics."""
    report = count(point_set, workers)
    if len(point_set) >= 2:
        report = report.model_copy(update={"pairs": circle_pairs(point_set)})
    return report


def pair_weight_profile(point_set: PointSet, report: Optional[Ap3Report] = None) -> List[dict]:
    """For each pair of Pairs(A): w(a)/2 + w(b)/2 and whether the pair is in Pairs0(A)."""
    report = report or count(point_set)
    diagnostics = report.pairs or circle_pairs(point_set)
    in_pairs0 = set(diagnostics.pairs0)
    profile = []
    for i, j in diagnostics.pairs:
        profile.append({
            "pair": (i, j),
            "half_sum": (report.weights[i] + report.weights[j]) // 2,
            "in_pairs0": (i, j) in in_pairs0,
        })
    return profile


def equator_decomposition(point_set: PointSet) -> int:
    """Count an equator-and-poles set from its equator part and its poles.

    With both poles present the count is |AP(A0)| + 2|A0 & -A0| + 2|A0| + 2;
    otherwise |AP(A0)| + |poles| * |A0 & -A0| + |poles|.
    """
    if point_set.space.kind != SpaceKind.EQUATOR_POLES:
        raise InvalidInputError("Equator decomposition needs an equator_poles point set")
    equator = [p.turn for p in point_set.points if not p.is_pole]
    poles = len(point_set) - len(equator)

    equator_set = set(equator)
    circle_part = PointSet(
        space=Space.circle(), points=tuple(CirclePoint(turn=t) for t in equator)
    )
    circle_count = count(circle_part).total
    antipodal = sum(1 for t in equator if antipode(t) in equator_set)

    if poles == 2:
        return circle_count + 2 * antipodal + 2 * len(equator) + 2
    return circle_count + poles * antipodal + poles

"""Exhaustive and stochastic maximization of the progression count over a ground set.

Both modes work on the integer distance table of the ground set, computed
once; a candidate subset is scored with `subset_total`. Work is split into
independent pieces (first index for exhaustive mode, restarts for stochastic
mode) whose results are merged in a fixed order, so outputs do not depend on
the worker count.
"""
import itertools
import logging
import math
import random
from typing import Callable, List, Optional, Sequence, Tuple

from src.components.counter import count, distance_table, map_ordered, subset_total, worker_count
from src.components.data_parser import PointSetParser
from src.config import CONFIG
from src.models.ap3_report import Ap3Report
from src.models.prediction import Prediction
from src.models.search_result import AnnealingSchedule, AuditReport, GroundSet, SearchResult
from src.models.space import PointSet
from src.utils.errors import BudgetExceededError, InvalidParametersError

logger = logging.getLogger(__name__)

SEED_STRIDE = 1000003


def _check_size(ground: GroundSet, n: int) -> None:
    if n < 0:
        raise InvalidParametersError(f"Subset size must be non-negative, got {n}")
    if n > len(ground):
        raise InvalidParametersError(
            f"Subset size {n} exceeds the ground set size {len(ground)}"
        )


def exhaustive_max(
    ground: GroundSet,
    n: int,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> SearchResult:
    """Exact maximum over all n-subsets, with every optimal subset as a sorted index list."""
    _check_size(ground, n)
    m = len(ground)
    budget = CONFIG["search"]["exhaustive_budget"] if budget is None else budget
    required = math.comb(m, n)
    if required > budget:
        logger.warning("Refusing exhaustive search: C(%d, %d) = %d > budget %d", m, n, required, budget)
        raise BudgetExceededError(required, budget)

    if n == 0:
        return SearchResult(mode="exhaustive", n=0, best_value=0, witnesses=[[]], evaluations=1)

    table = distance_table(ground.candidates)
    factor = ground.space.relation_factor

    def scan_partition(first: int) -> Tuple[int, List[List[int]], int]:
        best, witnesses, evaluations = -1, [], 0
        for rest in itertools.combinations(range(first + 1, m), n - 1):
            subset = (first,) + rest
            value = subset_total(table, subset, factor)
            evaluations += 1
            if value > best:
                best, witnesses = value, [list(subset)]
            elif value == best:
                witnesses.append(list(subset))
        logger.debug("Partition first=%d: best %d over %d subsets", first, best, evaluations)
        return best, witnesses, evaluations

    partials = map_ordered(scan_partition, list(range(m - n + 1)), worker_count(workers))

    best_value, witnesses, evaluations = -1, [], 0
    for best, found, evaluated in partials:
        evaluations += evaluated
        if best > best_value:
            best_value, witnesses = best, list(found)
        elif best == best_value:
            witnesses.extend(found)

    logger.info(
        "Exhaustive search n=%d over %d candidates: best %d, %d optimal subsets",
        n, m, best_value, len(witnesses),
    )
    return SearchResult(
        mode="exhaustive", n=n, best_value=best_value,
        witnesses=witnesses, evaluations=evaluations,
    )


def default_schedule() -> AnnealingSchedule:
    search_config = CONFIG["search"]
    return AnnealingSchedule(
        initial_temperature=search_config.get("initial_temperature"),
        cooling_ratio=search_config.get("cooling_ratio", 0.995),
        proposal_factor=search_config.get("proposal_factor", 200),
    )


class SubsetAnnealer:
    """Single-swap simulated annealing over n-subsets, finished by a greedy polish.

    The temperature starts at `initial_temperature` (n when unset) and is
    multiplied by `cooling_ratio` after every sweep of |ground| proposals.
    """

    def __init__(self, table: List[List[int]], factor: int, n: int, schedule: AnnealingSchedule):
        self.table = table
        self.factor = factor
        self.n = n
        self.m = len(table)
        self.schedule = schedule
        self.evaluations = 0

    def score(self, subset: Sequence[int]) -> int:
        self.evaluations += 1
        return subset_total(self.table, subset, self.factor)

    def run(self, rng: random.Random) -> Tuple[int, List[int]]:
        current = sorted(rng.sample(range(self.m), self.n))
        current_value = self.score(current)
        best, best_value = list(current), current_value

        proposals = self.schedule.proposals
        if proposals is None:
            proposals = self.schedule.proposal_factor * self.n * self.m
        temperature = self.schedule.initial_temperature
        if temperature is None:
            temperature = float(self.n)

        outside = sorted(set(range(self.m)) - set(current))
        for step in range(proposals):
            i = rng.randrange(self.n)
            j = rng.randrange(len(outside))
            candidate = list(current)
            candidate[i] = outside[j]
            candidate_value = self.score(candidate)

            delta = candidate_value - current_value
            if delta >= 0 or (temperature > 0 and rng.random() < math.exp(delta / temperature)):
                outside[j] = current[i]
                current, current_value = candidate, candidate_value
                if current_value > best_value:
                    best, best_value = sorted(current), current_value

            if (step + 1) % self.m == 0:
                temperature *= self.schedule.cooling_ratio

        return self.polish(best, best_value)

    def polish(self, subset: List[int], value: int) -> Tuple[int, List[int]]:
        """Best-improvement swaps until none improves the count."""
        improved = True
        while improved:
            improved = False
            chosen = set(subset)
            best_swap = None
            for i in range(self.n):
                for v in range(self.m):
                    if v in chosen:
                        continue
                    candidate = list(subset)
                    candidate[i] = v
                    candidate_value = self.score(candidate)
                    if candidate_value > value and (best_swap is None or candidate_value > best_swap[0]):
                        best_swap = (candidate_value, candidate)
            if best_swap is not None:
                value, subset = best_swap[0], sorted(best_swap[1])
                improved = True
        return value, sorted(subset)


def stochastic_max(
    ground: GroundSet,
    n: int,
    seed: Optional[int] = None,
    schedule: Optional[AnnealingSchedule] = None,
    restarts: Optional[int] = None,
    workers: Optional[int] = None,
) -> SearchResult:
    """Seeded annealing restarts; the first restart reaching the best value wins."""
    _check_size(ground, n)
    seed = CONFIG["search"]["default_seed"] if seed is None else seed
    restarts = CONFIG["search"].get("restarts", 1) if restarts is None else restarts
    if restarts < 1:
        raise InvalidParametersError(f"restarts must be at least 1, got {restarts}")
    schedule = schedule or default_schedule()
    m = len(ground)

    if n == 0:
        return SearchResult(mode="stochastic", n=0, best_value=0, witnesses=[[]], evaluations=1, seed=seed)

    table = distance_table(ground.candidates)
    factor = ground.space.relation_factor

    if n == m:
        value = subset_total(table, range(m), factor)
        return SearchResult(
            mode="stochastic", n=n, best_value=value,
            witnesses=[list(range(m))], evaluations=1, seed=seed,
        )

    def one_restart(index: int) -> Tuple[int, List[int], int]:
        annealer = SubsetAnnealer(table, factor, n, schedule)
        value, subset = annealer.run(random.Random(seed * SEED_STRIDE + index))
        logger.debug("Restart %d (seed %d): best %d", index, seed, value)
        return value, subset, annealer.evaluations

    outcomes = map_ordered(one_restart, list(range(restarts)), worker_count(workers))

    best_value, best_subset, evaluations = -1, [], 0
    for value, subset, evaluated in outcomes:
        evaluations += evaluated
        if value > best_value:
            best_value, best_subset = value, subset

    logger.info(
        "Stochastic search n=%d over %d candidates, seed %d, %d restarts: best %d",
        n, m, seed, restarts, best_value,
    )
    return SearchResult(
        mode="stochastic", n=n, best_value=best_value,
        witnesses=[best_subset], evaluations=evaluations, seed=seed,
    )


Sampler = Callable[[random.Random], PointSet]
ExtraCheck = Callable[[PointSet, Ap3Report], Optional[str]]


def bound_audit(
    sampler: Sampler,
    bound: Callable[[int], Prediction],
    trials: int,
    seed: int,
    extra_check: Optional[ExtraCheck] = None,
    bound_name: Optional[str] = None,
) -> AuditReport:
    """Count `trials` sampled point sets against an upper bound.

    A set whose count exceeds the bound, or for which `extra_check` returns a
    message, is a violation and is kept serialized for replay. The tightest
    instance is the one with the smallest slack (first seen on ties).
    """
    rng = random.Random(seed)
    parser = PointSetParser()
    name = bound_name or getattr(bound, "__name__", "bound")
    violations, failures = 0, []
    tightest: Optional[Tuple[int, int, int, PointSet]] = None

    for trial in range(trials):
        point_set = sampler(rng)
        report = count(point_set)
        limit = bound(len(point_set)).value
        problems = []
        if report.total > limit:
            problems.append(f"count {report.total} exceeds {name}({len(point_set)}) = {limit}")
        if extra_check is not None:
            message = extra_check(point_set, report)
            if message:
                problems.append(message)
        if problems:
            violations += 1
            failures.append({
                "trial": trial,
                "total": report.total,
                "bound": limit,
                "problems": problems,
                "point_set": parser.dump(point_set),
            })
        slack = limit - report.total
        if tightest is None or slack < tightest[0]:
            tightest = (slack, report.total, limit, point_set)

    if violations:
        logger.warning("Audit %s: %d violations in %d trials (seed %d)", name, violations, trials, seed)
    else:
        logger.info("Audit %s: %d trials, no violations (seed %d)", name, trials, seed)

    return AuditReport(
        bound_name=name,
        trials=trials,
        seed=seed,
        violations=violations,
        failures=failures,
        tightest_total=tightest[1] if tightest else None,
        tightest_bound=tightest[2] if tightest else None,
        tightest_point_set=parser.dump(tightest[3]) if tightest else None,
    )

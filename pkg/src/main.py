"""Command-line front end.

Machine-readable reports go to stdout (or -o FILE); logs go to stderr and
the configured log file. Exit codes: 0 success, 1 failed verification or
audit, 2 usage or input errors.
"""
import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import ValidationError

from src.components import constructions, formulas
from src.components.counter import count, pair_weight_profile, circle_pairs
from src.components.data_parser import PointSetParser, dump_witnesses
from src.components.run_ledger import RunLedger
from src.components.search import exhaustive_max, stochastic_max
from src.components.verifier import SUITES, verify
from src.config import CONFIG
from src.models.construction import ConstructionName, ConstructionSpec
from src.models.search_result import AnnealingSchedule, GroundSet
from src.models.space import SpaceKind
from src.utils.errors import Ap3Error

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def configure_logging(level: Optional[str] = None) -> None:
    level = (level or CONFIG["app"].get("log_level", "INFO")).upper()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = CONFIG["app"].get("log_file")
    if log_file:
        try:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_file, mode="a"))
        except OSError as e:
            print(f"Log file {log_file} unavailable: {e}", file=sys.stderr)
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        logger.info("Wrote %s", path)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _csv(rows: List[List]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# Commands: each returns (exit code, ledger outcome)
# ---------------------------------------------------------------------------

def cmd_count(args) -> tuple:
    point_set = PointSetParser().load_file(args.file)
    report = count(point_set)
    fmt = "csv" if args.csv else args.format
    if fmt == "csv" and args.pairs:
        raise Ap3Error("--pairs is only available with JSON output")
    if fmt == "csv":
        rows = [["index", "weight"]] + [[i, w] for i, w in enumerate(report.weights)]
        rows.append(["total", report.total])
        _emit(_csv(rows), args.output)
    else:
        output = report.to_output()
        if args.pairs:
            if point_set.space.kind != SpaceKind.CIRCLE or len(point_set) < 2:
                raise Ap3Error("--pairs needs a circle point set with at least two points")
            pairs = circle_pairs(point_set)
            output["pairs"] = [list(p) for p in pairs.pairs]
            output["pairs0"] = [list(p) for p in pairs.pairs0]
            output["pair_weights"] = [
                {**entry, "pair": list(entry["pair"])}
                for entry in pair_weight_profile(point_set, report.model_copy(update={"pairs": pairs}))
            ]
        _emit(json.dumps(output, indent=2), args.output)
    return EXIT_OK, {"n": report.n, "total": report.total}


def cmd_construct(args) -> tuple:
    name = ConstructionName(args.name)
    spec = ConstructionSpec(name=name, params=constructions.parse_params(name, args.params))
    point_set = constructions.build(spec)
    _emit(PointSetParser().dumps(point_set), args.output)
    return EXIT_OK, {"name": name.value, "points": len(point_set)}


def _prediction_dict(space: str, n: int, prediction) -> Dict:
    return {"space": space, "n": n, **prediction.model_dump(mode="json")}


def cmd_predict(args) -> tuple:
    if args.all:
        output = [_prediction_dict(args.space, args.n, p) for p in formulas.predictions(args.space, args.n)]
        headline = output[0]["value"]
    else:
        output = _prediction_dict(args.space, args.n, formulas.predict(args.space, args.n))
        headline = output["value"]
    _emit(json.dumps(output, indent=2), args.output)
    return EXIT_OK, {"space": args.space, "n": args.n, "value": headline}


def cmd_table(args) -> tuple:
    rows = [["n", "prediction", "kind", "source"]]
    for n in range(args.n_min, args.n_max + 1):
        for prediction in formulas.predictions(args.space, n):
            rows.append([n, prediction.value, prediction.kind.value, prediction.source])
    if args.format == "json":
        keys = rows[0]
        _emit(json.dumps([dict(zip(keys, r)) for r in rows[1:]], indent=2), args.output)
    else:
        _emit(_csv(rows), args.output)
    return EXIT_OK, {"space": args.space, "rows": len(rows) - 1}


def cmd_search(args) -> tuple:
    candidates = PointSetParser().load_file(args.ground)
    ground = GroundSet(candidates=candidates)
    if args.exhaustive:
        stochastic_only = {
            "--restarts": args.restarts, "--proposals": args.proposals, "--temperature": args.temperature,
        }
        given = [flag for flag, value in stochastic_only.items() if value is not None]
        if given:
            raise Ap3Error(f"{', '.join(given)} applies to stochastic search only")
        result = exhaustive_max(ground, args.n, budget=args.budget)
    else:
        if args.budget is not None:
            raise Ap3Error("--budget applies to exhaustive search only")
        schedule = None
        if args.proposals is not None or args.temperature is not None:
            schedule = AnnealingSchedule(
                initial_temperature=args.temperature,
                cooling_ratio=CONFIG["search"].get("cooling_ratio", 0.995),
                proposals=args.proposals,
                proposal_factor=CONFIG["search"].get("proposal_factor", 200),
            )
        result = stochastic_max(ground, args.n, seed=args.seed, schedule=schedule, restarts=args.restarts)
    output = result.model_dump()
    output["witness_sets"] = dump_witnesses(candidates, result.witnesses)
    _emit(json.dumps(output, indent=2), args.output)
    return EXIT_OK, {"mode": result.mode, "n": result.n, "best_value": result.best_value}


def cmd_verify(args) -> tuple:
    report = verify(args.suite, args.n_max)
    if args.format == "csv":
        rows = [["check", "construction", "params", "expected", "actual", "passed"]]
        for row in report.rows:
            rows.append([row.check, row.construction, json.dumps(row.params), row.expected, row.actual, row.passed])
        _emit(_csv(rows), args.output)
    else:
        _emit(json.dumps(report.to_output(), indent=2, default=str), args.output)
    for row in report.failures:
        logger.error(
            "FAILED %s %s %s: expected %s, got %s%s",
            row.check, row.construction, row.params, row.expected, row.actual,
            f" ({row.detail})" if row.detail else "",
        )
    code = EXIT_OK if report.passed else EXIT_FAILED
    return code, {"suite": args.suite, "checks": len(report.rows), "failed": len(report.failures)}


def cmd_ledger(args, ledger: RunLedger) -> tuple:
    _emit(ledger.export(args.format, limit=args.limit, command=args.command_filter), args.output)
    return EXIT_OK, {"limit": args.limit}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ap3lab",
        description="Count, construct, predict and search 3-term arithmetic progressions in metric spaces.",
    )
    parser.add_argument("--log-level", default=None, help="Override app.log_level")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads for counting and search")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="Count ordered 3-APs of a PointSet file")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--csv", action="store_true", help="Shorthand for --format csv")
    p.add_argument("--pairs", action="store_true", help="Add Pairs/Pairs0 diagnostics (circle sets)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("construct", help="Write a named construction as a PointSet file")
    p.add_argument("name", choices=[c.value for c in ConstructionName])
    p.add_argument("params", nargs="*", help="key=value parameters, e.g. n=8 offset=1/16")
    p.add_argument("-o", "--output")

    p = sub.add_parser("predict", help="Closed-form prediction for a space and size")
    p.add_argument("space", choices=sorted(formulas.PREDICTORS))
    p.add_argument("n", type=int)
    p.add_argument("--all", action="store_true", help="List every known bound, not just the headline")
    p.add_argument("-o", "--output")

    p = sub.add_parser("table", help="Predictions for n = n-min..n-max")
    p.add_argument("space", choices=sorted(formulas.PREDICTORS))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output")

    p = sub.add_parser("search", help="Maximize the count over n-subsets of a ground set")
    p.add_argument("--ground", required=True, help="PointSet file of candidates")
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="Maximum number of subsets for --exhaustive")
    p.add_argument("--proposals", type=int, default=None, help="Annealing proposals per restart")
    p.add_argument("--temperature", type=float, default=None, help="Initial annealing temperature")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="Run a verify suite")
    p.add_argument("suite", choices=["all"] + list(SUITES))
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("-o", "--output")

    p = sub.add_parser("ledger", help="Show recent runs")
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--command", dest="command_filter", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("-o", "--output")
    return parser


COMMANDS = {
    "count": cmd_count,
    "construct": cmd_construct,
    "predict": cmd_predict,
    "table": cmd_table,
    "search": cmd_search,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    if args.threads is not None:
        CONFIG["counting"]["threads"] = max(1, args.threads)

    ledger = RunLedger()
    parameters = {k: v for k, v in vars(args).items() if k != "command"}
    outcome: Dict = {}
    try:
        if args.command == "ledger":
            code, outcome = cmd_ledger(args, ledger)
        else:
            code, outcome = COMMANDS[args.command](args)
    except (Ap3Error, ValidationError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        code, outcome = EXIT_USAGE, {"error": str(e)}
    except OSError as e:
        logger.error("I/O error: %s", e)
        code, outcome = EXIT_USAGE, {"error": str(e)}
    ledger.record(args.command, parameters=parameters, outcome=outcome, exit_code=code)
    ledger.close()
    return code


if __name__ == "__main__":
    sys.exit(main())

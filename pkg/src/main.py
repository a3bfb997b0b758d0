"""Main entry point for spinorlab."""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .config import DB_PATH, LOG_LEVEL, SUITE_NAMES
from .harmonic import verify_request
from .reporting import FORMATS, emit_report
from .storage import ResultStore
from .suites import run_suite
from .utils import get_logger, setup_logging

logger = get_logger(__name__)

COMMANDS = SUITE_NAMES + ["verify", "history"]


def load_config(path: Optional[str]) -> dict:
    """Read a JSON config file; an absent path gives an empty config."""
    if path is None:
        return {}
    config = json.loads(Path(path).read_text())
    if not isinstance(config, dict):
        raise ValueError(f"Config file {path} must hold a JSON object")
    return config


def build_suite_config(args: argparse.Namespace) -> tuple[str, dict]:
    """Merge the config file with explicit flags; flags win."""
    config = load_config(args.config)
    name = config.pop("suite", None)
    if args.command in SUITE_NAMES:
        name = args.command
    if name is None:
        raise ValueError("No suite given on the command line or in the config file")

    if args.m is not None:
        config["m"] = args.m[0] if len(args.m) == 1 else args.m
    if args.samples is not None:
        config["samples"] = args.samples
    if args.seed is not None:
        config["seed"] = args.seed
    if args.h is not None:
        config["h"] = args.h[0] if len(args.h) == 1 else args.h
    if args.workers is not None:
        config["workers"] = args.workers
    return name, config


def write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(out).write_text(text)
    logger.info(f"Report written to {out}")


def run_command(args: argparse.Namespace) -> int:
    """Run one suite and emit its report. Returns the exit code."""
    name, config = build_suite_config(args)
    result = run_suite(name, config)
    write_output(emit_report(result, args.format), args.out)

    if args.record:
        run_id = ResultStore(args.db).record(result)
        logger.info(f"[{name}] stored as run {run_id}")
    return 0 if result.passed else 1


def verify_command(args: argparse.Namespace) -> int:
    if args.target is None:
        raise ValueError("verify needs the path of a JSON request")
    request = json.loads(Path(args.target).read_text())
    response = verify_request(request)
    write_output(json.dumps(response, sort_keys=True, indent=2, default=float) + "\n", args.out)
    return 0 if response["pass"] else 1


def history_command(args: argparse.Namespace) -> int:
    store = ResultStore(args.db)
    if args.clear:
        count = store.clear()
        print(f"Cleared {count} runs.")
        return 0
    runs = store.recent_runs(args.limit, suite=args.target)
    if args.format == "json":
        write_output(json.dumps(runs, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    lines = [f"{'id':>5}  {'suite':<15} {'seed':>6}  {'status':<6} {'failed':>9}  created"]
    for run in runs:
        status = "ok" if run["pass"] else "FAIL"
        lines.append(
            f"{run['id']:>5}  {run['suite']:<15} {run['seed']:>6}  {status:<6} "
            f"{run['failed']:>4}/{run['total']:<4}  {run['created_at']}"
        )
        if run["pass"]:
            continue
        for check in store.failed_checks(run["id"]):
            lines.append(f"{'':>7}- {check.name}: {check.residual:.3e} > {check.tolerance:.1e}")
    write_output("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorlab",
        description="Numerical verification of Dirac-harmonic maps on hypersurfaces",
    )
    parser.add_argument(
        "command",
        nargs="?",
        choices=COMMANDS,
        help="Suite to run, 'verify' for a JSON request, or 'history' for the run ledger",
    )
    parser.add_argument(
        "target",
        nargs="?",
        help="Request file for 'verify'; optional suite filter for 'history'",
    )
    parser.add_argument("--suite", choices=SUITE_NAMES, help="Suite to run (same as the positional)")
    parser.add_argument("--config", help="JSON file with the suite configuration")
    parser.add_argument("--m", type=int, nargs="+", help="Dimension(s) of the hypersurface")
    parser.add_argument("--samples", type=int, help="Number of seeded sample points")
    parser.add_argument("--seed", type=int, help="RNG seed (default: SPINORLAB_SEED)")
    parser.add_argument("--h", type=float, nargs="+", help="Finite-difference step(s)")
    parser.add_argument("--workers", type=int, help="Threads used over sample points")
    parser.add_argument("--format", default="json", choices=FORMATS, help="Report format")
    parser.add_argument("--out", help="Write the report to this file instead of stdout")
    parser.add_argument("--record", action="store_true", help="Store the run in the ledger")
    parser.add_argument("--db", type=Path, default=DB_PATH, help="Run ledger database")
    parser.add_argument("--limit", type=int, default=20, help="Runs listed by 'history'")
    parser.add_argument("--clear", action="store_true", help="With 'history': delete all runs")
    parser.add_argument(
        "--log-level",
        default=LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Set logging level",
    )
    return parser


def main(argv: Optional[list[str]] = None) -> None:
    """CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    if args.command is None and args.suite is not None:
        args.command = args.suite
    if args.command is None and args.config is None:
        parser.error("give a suite name, 'verify', 'history' or --config")

    try:
        if args.command == "verify":
            code = verify_command(args)
        elif args.command == "history":
            code = history_command(args)
        else:
            code = run_command(args)
    except Exception as e:
        logger.error(f"Suite failed: {e}")
        sys.exit(2)
    sys.exit(code)


if __name__ == "__main__":
    main()

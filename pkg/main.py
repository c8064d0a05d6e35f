# main.py
# Command-line entry point: python main.py <command> [--config PATH|-] [--out DIR] ...

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

import commands
from config import get_settings
from errors import SettingsError
from middleware.error_handler import EXIT_ERROR, guarded_run, write_failed_marker
from schemas import COMMANDS, RunSummary
from services.runner import ConfigError, ConfigOverrides, parse_config, parse_profile_param, read_summary, run

logger = logging.getLogger(__name__)

SUITE_COMMAND = "all"
DEFAULT_OUT_ROOT = Path("runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Ermakov-Lewis invariant lab: classical, symbolic and KvN checks.",
    )
    parser.add_argument("command", choices=[*COMMANDS, SUITE_COMMAND], help="study to run")
    parser.add_argument("--config", help="JSON run configuration, '-' for stdin; defaults apply when omitted")
    parser.add_argument("--out", type=Path, help="output directory (default: runs/<command>)")
    parser.add_argument("--seed", type=int, help="RNG seed for classical sampling")
    parser.add_argument("--dt", type=float, help="KvN time step")
    parser.add_argument(
        "--profile-param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override one stiffness-profile parameter (repeatable)",
    )
    parser.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    return parser


def _configure_logging(level: str, quiet: bool) -> None:
    logging.basicConfig(
        level=logging.WARNING if quiet else level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _report(summary: RunSummary | None, status: int, out_dir: Path, quiet: bool) -> None:
    if quiet:
        return
    if summary is not None:
        for assertion in summary.assertions:
            verdict = "PASS" if assertion.passed else "FAIL"
            print(f"{verdict}  {assertion.name}" + (f"  ({assertion.detail})" if assertion.detail else ""))
    print(f"{'passed' if status == 0 else 'FAILED'}: artifacts in {out_dir}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
    except SettingsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _configure_logging(settings.log_level, args.quiet)

    out_dir = args.out or DEFAULT_OUT_ROOT / args.command

    if args.command == SUITE_COMMAND:
        if args.config or args.profile_param:
            print("error: 'all' runs bundled configurations; --config and --profile-param do not apply", file=sys.stderr)
            return EXIT_ERROR
        status = guarded_run(lambda: commands.suite.run_suite(out_dir, seed=args.seed, dt=args.dt), out_dir)
        _report(read_summary(out_dir), status, out_dir, args.quiet)
        return status

    try:
        overrides = ConfigOverrides(
            seed=args.seed,
            dt=args.dt,
            profile_params=dict(parse_profile_param(item) for item in args.profile_param),
        )
        config = parse_config(args.config, command=args.command, overrides=overrides)
    except ConfigError as exc:
        logger.error("%s", exc)
        write_failed_marker(out_dir, str(exc))
        return EXIT_ERROR

    status = guarded_run(lambda: run(config, out_dir), out_dir)
    _report(read_summary(out_dir), status, out_dir, args.quiet)
    return status


if __name__ == "__main__":
    sys.exit(main())

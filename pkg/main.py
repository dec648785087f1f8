"""
Einstein-Cartan-Dirac Identity Verifier
=======================================
Entry point. Runs the exact-arithmetic verification suites and writes a JSON
report, or normalizes a state file.

Usage:
    python main.py verify all --sig 4,0 --seed 7 --trials 25
    python main.py verify appendixC --algebra abelian
    python main.py verify fieldeq --state data/states/dirac.state --report reports/dirac.json
    python main.py state data/states/curved.state

Exit codes: 0 pass, 1 identity failure or check error, 2 input error.
"""

import argparse
import logging
import os
import sys

from dotenv import dotenv_values, load_dotenv

from core.algebra import ALGEBRA_BUILDERS, MetricSignature
from core.errors import ContractViolation, StateFormatError
from services.report_summarizer import summarize
from services.state_store import load_state, serialize_state
from services.suite_runner import EXIT_INPUT_ERROR, SuiteConfig, run
from services.verification_suites import SUITES
from utils.logger import get_custom_logger, set_stream_level

logger = get_custom_logger("main")

DEFAULTS = {
    "ECD_SIGNATURE": "4,0",
    "ECD_SEED": "7",
    "ECD_TRIALS": "25",
    "ECD_DEGREE": "2",
    "ECD_SUITE": "all",
    "ECD_ALGEBRA": "euclidean",
    "ECD_WORKERS": "1",
    "ECD_REPORT": None,
    "ECD_STATE": None,
}

# flag attribute → settings key
FLAG_KEYS = {
    "sig": "ECD_SIGNATURE",
    "seed": "ECD_SEED",
    "trials": "ECD_TRIALS",
    "degree": "ECD_DEGREE",
    "suite": "ECD_SUITE",
    "algebra": "ECD_ALGEBRA",
    "workers": "ECD_WORKERS",
    "report": "ECD_REPORT",
    "state": "ECD_STATE",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="main.py", description="Exact verification of the Einstein-Cartan-Dirac identities")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("suite", nargs="?", choices=("all",) + SUITES, help="suite to run (default: ECD_SUITE or all)")
    verify.add_argument("--suite", dest="suite_flag", choices=("all",) + SUITES, help="same as the positional SUITE")
    verify.add_argument("--sig", help="metric signature p,q")
    verify.add_argument("--seed", help="master random seed")
    verify.add_argument("--trials", help="random draws per check")
    verify.add_argument("--degree", help="polynomial degree cap for random states")
    verify.add_argument("--algebra", choices=tuple(ALGEBRA_BUILDERS), help="structure algebra for the DGA suites")
    verify.add_argument("--workers", help="process pool size")
    verify.add_argument("--state", help="state file for the state-based checks")
    verify.add_argument("--report", help="write the JSON report to this path")
    verify.add_argument("--config", help="dotenv-format file with ECD_* settings")
    verify.add_argument("--quiet", action="store_true", help="only warnings on the console, no summary table")
    verify.add_argument("--no-timing", action="store_true", help="write null wall times (byte-stable reports)")

    state = sub.add_parser("state", help="validate a state file and print its normalized form")
    state.add_argument("file")
    return parser


def resolve_settings(args: argparse.Namespace, environ=None) -> dict:
    """Flags > config file > environment > defaults."""
    environ = os.environ if environ is None else environ
    settings = dict(DEFAULTS)
    settings.update({key: environ[key] for key in DEFAULTS if environ.get(key)})
    if args.config:
        if not os.path.isfile(args.config):
            raise ContractViolation(f"config file not found: {args.config}")
        settings.update({key: value for key, value in dotenv_values(args.config).items() if key in DEFAULTS and value})
    args.suite = args.suite_flag or args.suite
    for attr, key in FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            settings[key] = value
    return settings


def _integer(settings: dict, key: str) -> int:
    try:
        return int(settings[key])
    except (TypeError, ValueError) as e:
        raise ContractViolation(f"{key} must be an integer, got {settings[key]!r}") from e


def config_from_settings(settings: dict, include_timing: bool = True) -> SuiteConfig:
    return SuiteConfig(
        signature=MetricSignature.parse(settings["ECD_SIGNATURE"]),
        seed=_integer(settings, "ECD_SEED"),
        trials=_integer(settings, "ECD_TRIALS"),
        degree=_integer(settings, "ECD_DEGREE"),
        suite=settings["ECD_SUITE"],
        algebra=settings["ECD_ALGEBRA"],
        workers=_integer(settings, "ECD_WORKERS"),
        state_path=settings["ECD_STATE"],
        report_path=settings["ECD_REPORT"],
        include_timing=include_timing,
    )


# ── Commands ─────────────────────────────────────────────────────────────

def cmd_verify(args: argparse.Namespace) -> int:
    if args.quiet:
        set_stream_level(logging.WARNING)
    try:
        config = config_from_settings(resolve_settings(args), include_timing=not args.no_timing)
    except ContractViolation as e:
        logger.error("Input error: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    report, exit_code = run(config)
    if not args.quiet or exit_code == EXIT_INPUT_ERROR:
        print(summarize(report))
    return exit_code


def cmd_state(args: argparse.Namespace) -> int:
    try:
        state = load_state(args.file)
    except StateFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    sys.stdout.write(serialize_state(state))
    return 0


COMMANDS = {"verify": cmd_verify, "state": cmd_state}


def main(argv=None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags, which is already the input-error code
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

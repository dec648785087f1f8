"""
Suite Runner
============
Validates a SuiteConfig, runs the selected checks (in-process or on a process
pool), assembles the report and maps it to an exit code.

Exit codes:
  0  every identity check passed
  1  an identity check failed or raised
  2  input error (bad configuration or state file)
"""

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from core.algebra import ALGEBRA_BUILDERS, MetricSignature, require_supported
from core.errors import ContractViolation, StateFormatError
from services.state_store import load_state
from services.verification_suites import (
    CHECK_DISPATCH,
    DEFINITIONS_BY_ID,
    SUITES,
    CheckContext,
    select_checks,
)
from utils.logger import get_custom_logger
from utils.report_logger import SCHEMA, ReportLogger

logger = get_custom_logger("suite_runner")

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2


class ConfigError(ValueError):
    """Invalid run configuration; maps to exit code 2."""


@dataclass(frozen=True)
class SuiteConfig:
    signature: MetricSignature = MetricSignature(4, 0)
    seed: int = 7
    trials: int = 25
    degree: int = 2
    suite: str = "all"
    algebra: str = "euclidean"
    workers: int = 1
    state_path: str | None = None
    report_path: str | None = None
    include_timing: bool = True

    def validate(self) -> "SuiteConfig":
        try:
            require_supported(self.signature)
        except ContractViolation as e:
            raise ConfigError(str(e)) from e
        if self.degree < 0:
            raise ConfigError(f"degree must be >= 0, got {self.degree}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from all, {', '.join(SUITES)}")
        if self.algebra not in ALGEBRA_BUILDERS:
            raise ConfigError(f"unknown algebra {self.algebra!r}; choose from {', '.join(ALGEBRA_BUILDERS)}")
        return self

    def to_dict(self) -> dict:
        data = asdict(self)
        data["signature"] = f"{self.signature.p},{self.signature.q}"
        data.pop("include_timing")
        return data


def derive_seed(master_seed: int, check_id: str) -> int:
    digest = hashlib.sha256(f"{master_seed}:{check_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ── Running checks ───────────────────────────────────────────────────────

def run_check(check_id: str, config: SuiteConfig) -> dict:
    """One report record; identity failures and exceptions both become data."""
    definition = DEFINITIONS_BY_ID[check_id]
    ctx = CheckContext(
        signature=config.signature,
        algebra=config.algebra,
        trials=config.trials,
        degree=config.degree,
        rng=random.Random(derive_seed(config.seed, check_id)),
        state_path=config.state_path,
    )
    start = time.perf_counter()
    try:
        outcome = CHECK_DISPATCH[check_id](ctx)
    except Exception as e:
        logger.exception("Check %s raised", check_id)
        outcome = {"terms": 0, "parameters": {"error": f"{type(e).__name__}: {e}"}, "error": True}
    wall_time = round(time.perf_counter() - start, 3)

    terms = outcome["terms"]
    if outcome.get("error"):
        status = "error"
    elif outcome.get("informational"):
        status = "info"
    else:
        status = "pass" if terms == 0 else "fail"
    if status in ("fail", "error"):
        logger.warning("%s: %s (%d residual terms)", check_id, status, terms)
    else:
        logger.info("%s: %s in %.3fs", check_id, status, wall_time)
    return {
        "check": check_id,
        "suite": definition["suite"],
        "anchor": definition["anchor"],
        "identity": definition["identity"],
        "parameters": outcome["parameters"],
        "residual": {"zero": terms == 0, "terms": terms},
        "status": status,
        "wall_time": wall_time,
    }


def summarize_records(records: list[dict]) -> dict:
    counts = {status: sum(1 for r in records if r["status"] == status) for status in ("pass", "fail", "error", "info")}
    return {
        "total": len(records),
        "passed": counts["pass"],
        "failed": counts["fail"],
        "errors": counts["error"],
        "informational": counts["info"],
        "status": "pass" if counts["fail"] == 0 and counts["error"] == 0 else "fail",
    }


def _execute(check_ids: list[str], config: SuiteConfig) -> list[dict]:
    if config.workers == 1 or len(check_ids) < 2:
        return [run_check(check_id, config) for check_id in check_ids]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        futures = {check_id: pool.submit(run_check, check_id, config) for check_id in check_ids}
        # registry order, not completion order
        return [futures[check_id].result() for check_id in check_ids]


def run(config: SuiteConfig) -> tuple[dict, int]:
    """Run the configured suites; returns (report payload, exit code)."""
    try:
        config = config.validate()
        if config.state_path:
            load_state(config.state_path)
    except (ConfigError, StateFormatError) as e:
        logger.error("Input error: %s", e)
        return {"schema": SCHEMA, "error": str(e)}, EXIT_INPUT_ERROR

    definitions = select_checks(config.suite, with_state=bool(config.state_path))
    logger.info(
        "Running %d checks (suite=%s, signature=%s, seed=%d, trials=%d, degree=%d, workers=%d)",
        len(definitions), config.suite, config.signature, config.seed, config.trials, config.degree, config.workers,
    )
    report = ReportLogger(config.to_dict(), config.report_path, include_timing=config.include_timing)
    for record in _execute([d["id"] for d in definitions], config):
        report.log_record(record)
    payload = report.finalize(summarize_records(report.records))
    exit_code = EXIT_PASS if payload["summary"]["status"] == "pass" else EXIT_FAILURE
    return payload, exit_code

"""
Report Summarizer
=================
Renders a finished report as a short plain-text table.
Covers: per-check status and residual term count, failures first with the
identity they broke, totals.
"""

from utils.logger import get_custom_logger

logger = get_custom_logger("summarizer")

STATUS_ORDER = {"error": 0, "fail": 1, "info": 2, "pass": 3}


def summarize(report: dict, failures_only: bool = False) -> str:
    """
    Summarize a report payload as produced by ReportLogger.payload().
    Input errors (no records) produce a one-line diagnostic.
    """
    if "error" in report:
        return f"INPUT ERROR: {report['error']}"
    records = report.get("records") or []
    if not records:
        return "No checks were run."

    rows = sorted(records, key=lambda r: STATUS_ORDER.get(r["status"], 9))
    if failures_only:
        rows = [r for r in rows if r["status"] in ("fail", "error")]

    width = max(len(r["check"]) for r in records)
    lines = [f"{'CHECK'.ljust(width)}  STATUS  TERMS  ANCHOR"]
    for r in rows:
        lines.append(
            f"{r['check'].ljust(width)}  {r['status'].upper().ljust(6)}  {str(r['residual']['terms']).rjust(5)}  {r['anchor']}"
        )
        if r["status"] == "error":
            lines.append(f"{''.ljust(width)}  -> {r['parameters'].get('error', 'unknown error')}")
        elif r["status"] == "fail" and r.get("identity"):
            lines.append(f"{''.ljust(width)}  -> {r['identity']}")

    summary = report.get("summary") or _offline_summary(records)
    lines += [
        "",
        f"TOTAL: {summary['total']}  PASSED: {summary['passed']}  FAILED: {summary['failed']}  "
        f"ERRORS: {summary['errors']}  INFORMATIONAL: {summary['informational']}",
        f"STATUS: {summary['status'].upper()}",
    ]
    return "\n".join(lines)


# ── Fallback for an unfinished report ────────────────────────────────────

def _offline_summary(records: list[dict]) -> dict:
    """Counts recomputed from records when the run stopped before finalize."""
    logger.warning("Report has no summary; recomputing from %d records", len(records))
    count = lambda status: sum(1 for r in records if r["status"] == status)  # noqa: E731
    failed, errors = count("fail"), count("error")
    return {
        "total": len(records),
        "passed": count("pass"),
        "failed": failed,
        "errors": errors,
        "informational": count("info"),
        "status": "pass" if failed == 0 and errors == 0 else "incomplete",
    }

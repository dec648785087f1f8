import json
from pathlib import Path

from utils.logger import get_custom_logger

logger = get_custom_logger("report_logger")

SCHEMA = "ecd-report/1"


class ReportLogger:
    """
    Collects check records and writes the JSON report after every record,
    so an interrupted run still leaves a readable file.
    """

    def __init__(self, config: dict, report_path: str | Path | None = None, include_timing: bool = True):
        self.config = config
        self.report_path = Path(report_path) if report_path else None
        self.include_timing = include_timing
        self.records: list[dict] = []
        self.summary: dict | None = None
        if self.report_path:
            self.report_path.parent.mkdir(parents=True, exist_ok=True)
        self._flush()

    # ── Public API ────────────────────────────────────────────────────

    def log_record(self, record: dict):
        if not self.include_timing:
            record = {**record, "wall_time": None}
        self.records.append(record)
        self._flush()
        level = "info" if record["status"] in ("pass", "info") else "warning"
        getattr(logger, level)(
            "[%s] %s: %s (%d residual terms)",
            record["suite"],
            record["check"],
            record["status"],
            record["residual"]["terms"],
        )

    def finalize(self, summary: dict) -> dict:
        self.summary = summary
        self._flush()
        logger.info("Report finalized: %d records, status %s", len(self.records), summary["status"])
        return self.payload()

    def payload(self) -> dict:
        return {
            "schema": SCHEMA,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
        }

    def dumps(self) -> str:
        return json.dumps(self.payload(), indent=2, default=str)

    # ── Internal ──────────────────────────────────────────────────────

    def _flush(self):
        if not self.report_path:
            return
        try:
            self.report_path.write_text(self.dumps())
        except Exception as e:
            logger.error("Failed to write report: %s", e)

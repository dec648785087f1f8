import json

import pytest

from core.algebra import MetricSignature
from services import verification_suites
from services.report_summarizer import summarize
from services.suite_runner import (
    EXIT_FAILURE,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
    ConfigError,
    SuiteConfig,
    derive_seed,
    run,
    run_check,
    summarize_records,
)
from services.verification_suites import CHECK_DEFINITIONS, CHECK_DISPATCH, SUITES, select_checks
from utils.report_logger import SCHEMA, ReportLogger


# ── Registry ──

def test_every_definition_has_a_check():
    ids = [d["id"] for d in CHECK_DEFINITIONS]
    assert len(ids) == len(set(ids))
    assert set(ids) == set(CHECK_DISPATCH)
    assert {d["suite"] for d in CHECK_DEFINITIONS} == set(SUITES)
    assert all(d["anchor"] and d["identity"] for d in CHECK_DEFINITIONS)


def test_select_checks_filters_state_checks():
    everything = select_checks("all", with_state=True)
    without_state = select_checks("all")
    assert len(everything) - len(without_state) == 3
    assert all(not d.get("needs_state") for d in without_state)
    assert [d["suite"] for d in select_checks("el")] == ["el"] * 4


def test_select_checks_rejects_unknown_suite():
    with pytest.raises(ValueError):
        select_checks("appendixZ")


# ── Configuration ──

def test_derive_seed_is_stable_per_check():
    assert derive_seed(7, "algebra.jacobi") == derive_seed(7, "algebra.jacobi")
    assert derive_seed(7, "algebra.jacobi") != derive_seed(8, "algebra.jacobi")
    assert derive_seed(7, "algebra.jacobi") != derive_seed(7, "clifford.gamma5")


@pytest.mark.parametrize(
    "overrides",
    [
        {"signature": MetricSignature(2, 2)},
        {"trials": 0},
        {"degree": -1},
        {"workers": 0},
        {"suite": "appendixZ"},
        {"algebra": "sl2"},
    ],
)
def test_invalid_configurations(overrides):
    config = SuiteConfig(**overrides)
    with pytest.raises(ConfigError):
        config.validate()
    payload, code = run(config)
    assert code == EXIT_INPUT_ERROR
    assert payload["schema"] == SCHEMA
    assert "error" in payload and "records" not in payload


def test_malformed_state_is_an_input_error(tmp_path):
    bad = tmp_path / "bad.state"
    bad.write_text("signature 4 0\nvelocity 1\n")
    payload, code = run(SuiteConfig(suite="appendixA", state_path=str(bad)))
    assert code == EXIT_INPUT_ERROR
    assert "bad.state:2: velocity" in payload["error"]


def test_config_dict_is_json_ready():
    data = SuiteConfig(signature=MetricSignature(1, 3), report_path="r.json").to_dict()
    assert data["signature"] == "1,3"
    assert "include_timing" not in data
    json.dumps(data)


# ── Running checks ──

def test_run_check_record_shape():
    record = run_check("algebra.antisym_kronecker", SuiteConfig())
    assert record["status"] == "pass"
    assert record["suite"] == "appendixA"
    assert record["residual"] == {"zero": True, "terms": 0}
    assert record["identity"] == "δ^[123]_123 = 1; δ^[123]_213 = −1; δ^[112]_345 = 0"
    assert set(record) == {"check", "suite", "anchor", "identity", "parameters", "residual", "status", "wall_time"}


def test_exceptions_become_error_records(monkeypatch):
    def broken(ctx):
        raise RuntimeError("boom")

    monkeypatch.setitem(verification_suites.CHECK_DISPATCH, "algebra.jacobi", broken)
    record = run_check("algebra.jacobi", SuiteConfig())
    assert record["status"] == "error"
    assert record["parameters"]["error"] == "RuntimeError: boom"


def test_residual_terms_fail_unless_informational(monkeypatch):
    monkeypatch.setitem(verification_suites.CHECK_DISPATCH, "algebra.jacobi", lambda ctx: {"terms": 3, "parameters": {}})
    assert run_check("algebra.jacobi", SuiteConfig())["status"] == "fail"
    monkeypatch.setitem(
        verification_suites.CHECK_DISPATCH,
        "algebra.jacobi",
        lambda ctx: {"terms": 3, "parameters": {}, "informational": True},
    )
    assert run_check("algebra.jacobi", SuiteConfig())["status"] == "info"


def test_failing_check_sets_exit_code(monkeypatch):
    for definition in select_checks("appendixA"):
        monkeypatch.setitem(verification_suites.CHECK_DISPATCH, definition["id"], lambda ctx: {"terms": 0, "parameters": {}})
    monkeypatch.setitem(verification_suites.CHECK_DISPATCH, "algebra.jacobi", lambda ctx: {"terms": 1, "parameters": {}})
    payload, code = run(SuiteConfig(suite="appendixA"))
    assert code == EXIT_FAILURE
    assert payload["summary"]["failed"] == 1
    assert payload["summary"]["status"] == "fail"


def test_state_checks_run_against_a_loaded_state(states_dir):
    config = SuiteConfig(state_path=str(states_dir / "dirac.state"))
    assert run_check("fieldeq.state_belinfante", config)["status"] == "pass"
    record = run_check("fieldeq.state_residuals", config)
    assert record["status"] == "info"
    assert set(record["parameters"]["points"]) == {"0 0 0 0", "1 1/2 0 -1"}


def test_bianchi_check_covers_both_signatures():
    record = run_check("geometry.bianchi", SuiteConfig(signature=MetricSignature(3, 1), trials=1, degree=1))
    assert record["status"] == "pass"
    assert record["parameters"]["signatures"] == {"(3,1)": 0, "(4,0)": 0, "(1,3)": 0}


def test_appendix_a_report_is_byte_stable(tmp_path):
    path = tmp_path / "report.json"
    config = SuiteConfig(suite="appendixA", trials=2, include_timing=False, report_path=str(path))
    snapshots = []
    for _ in range(2):
        _, code = run(config)
        assert code == EXIT_PASS
        snapshots.append(path.read_bytes())
    assert snapshots[0] == snapshots[1]
    report = json.loads(snapshots[0])
    assert report["schema"] == SCHEMA
    assert report["summary"]["total"] == len(select_checks("appendixA"))
    assert all(r["wall_time"] is None for r in report["records"])


# ── Report logging and summaries ──

def _record(check, status, terms=0, **parameters):
    return {
        "check": check,
        "suite": "appendixA",
        "anchor": "anchor text",
        "parameters": parameters,
        "residual": {"zero": terms == 0, "terms": terms},
        "status": status,
        "wall_time": 0.5,
    }


def test_report_logger_flushes_every_record(tmp_path):
    path = tmp_path / "nested" / "report.json"
    logger = ReportLogger({"seed": 7}, path, include_timing=False)
    assert json.loads(path.read_text())["records"] == []
    logger.log_record(_record("a", "pass"))
    on_disk = json.loads(path.read_text())
    assert on_disk["records"][0]["wall_time"] is None
    assert on_disk["summary"] is None
    payload = logger.finalize(summarize_records(logger.records))
    assert payload["summary"]["passed"] == 1
    assert json.loads(path.read_text()) == payload


def test_summarize_records_counts():
    records = [_record("a", "pass"), _record("b", "fail", 2), _record("c", "info", 4), _record("d", "error")]
    summary = summarize_records(records)
    assert summary == {"total": 4, "passed": 1, "failed": 1, "errors": 1, "informational": 1, "status": "fail"}


def test_summary_lists_failures_first():
    records = [_record("ok", "pass"), _record("broken", "error", error="KeyError: 3"), _record("off", "fail", 5)]
    text = summarize({"records": records, "summary": summarize_records(records)})
    lines = text.splitlines()
    assert lines[1].startswith("broken")
    assert "-> KeyError: 3" in lines[2]
    assert lines[3].startswith("off")
    assert lines[-1] == "STATUS: FAIL"
    failures = summarize({"records": records, "summary": summarize_records(records)}, failures_only=True)
    assert not any(line.startswith("ok ") for line in failures.splitlines())


def test_summary_of_unfinished_and_empty_reports():
    text = summarize({"records": [_record("a", "pass")], "summary": None})
    assert text.endswith("STATUS: PASS")
    assert summarize({"records": []}) == "No checks were run."
    assert summarize({"schema": SCHEMA, "error": "bad"}) == "INPUT ERROR: bad"


def test_summary_shows_the_broken_identity():
    failing = {**_record("geometry.bianchi", "fail", 3), "identity": "Ric_μν − Ric_νμ = ∇_π T^π_μν − (d trT)_μν"}
    records = [_record("ok", "pass"), failing]
    lines = summarize({"records": records, "summary": summarize_records(records)}).splitlines()
    assert lines[1].startswith("geometry.bianchi")
    assert lines[2].strip() == "-> Ric_μν − Ric_νμ = ∇_π T^π_μν − (d trT)_μν"

import json

import pytest

from core.errors import ContractViolation
from main import build_parser, config_from_settings, main, resolve_settings
from services.state_store import load_state, serialize_state


def settings_for(argv, environ=None):
    return resolve_settings(build_parser().parse_args(argv), environ or {})


# ── Settings ──

def test_defaults():
    settings = settings_for(["verify"])
    config = config_from_settings(settings)
    assert (config.signature.p, config.signature.q) == (4, 0)
    assert (config.seed, config.trials, config.degree, config.suite) == (7, 25, 2, "all")
    assert config.state_path is None and config.report_path is None


def test_flags_beat_config_file_beat_environment(tmp_path):
    config_file = tmp_path / "run.env"
    config_file.write_text("ECD_SEED=3\nECD_TRIALS=4\nECD_DEGREE=1\nUNRELATED=x\n")
    environ = {"ECD_TRIALS": "8", "ECD_SIGNATURE": "1,3", "ECD_DEGREE": "5"}
    settings = settings_for(["verify", "--seed", "9", "--config", str(config_file)], environ)
    assert settings["ECD_SEED"] == "9"
    assert settings["ECD_TRIALS"] == "4"
    assert settings["ECD_DEGREE"] == "1"
    assert settings["ECD_SIGNATURE"] == "1,3"
    assert "UNRELATED" not in settings


def test_suite_flag_overrides_positional_suite():
    assert settings_for(["verify", "el"])["ECD_SUITE"] == "el"
    assert settings_for(["verify", "el", "--suite", "bianchi"])["ECD_SUITE"] == "bianchi"
    assert settings_for(["verify"], {"ECD_SUITE": "fieldeq"})["ECD_SUITE"] == "fieldeq"


def test_missing_config_file(tmp_path):
    with pytest.raises(ContractViolation):
        settings_for(["verify", "--config", str(tmp_path / "absent.env")])


def test_non_integer_setting():
    with pytest.raises(ContractViolation):
        config_from_settings(settings_for(["verify", "--seed", "seven"]))


# ── Exit codes ──

@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--sig", "5,0"],
        ["verify", "--sig", "2,2"],
        ["verify", "--trials", "0"],
        ["verify", "--degree", "x"],
        ["verify", "nosuchsuite"],
        ["frobnicate"],
    ],
)
def test_input_errors_exit_with_two(argv, capsys):
    assert main(argv) == 2


def test_verify_writes_report(tmp_path, capsys):
    report = tmp_path / "reports" / "a.json"
    code = main(["verify", "appendixA", "--trials", "1", "--no-timing", "--report", str(report)])
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["config"]["suite"] == "appendixA"
    assert payload["summary"]["status"] == "pass"
    assert "STATUS: PASS" in capsys.readouterr().out


def test_state_command_prints_normalized_text(states_dir, capsys):
    path = states_dir / "curved.state"
    assert main(["state", str(path)]) == 0
    assert capsys.readouterr().out == serialize_state(load_state(path))


def test_state_command_reports_singular_frames(states_dir, capsys):
    assert main(["state", str(states_dir / "singular.state")]) == 2
    err = capsys.readouterr().err
    assert "singular.state:4: sample:" in err

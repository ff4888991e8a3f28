import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

import holoext
from holoext.cli import main
from holoext.scenarios import SCENARIO_SPECS, ScenarioConfig, run_scenario

SRC_ROOT = str(Path(holoext.__file__).resolve().parent.parent)


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


FAST_FUBINI = {
    "scenario": "fubini_identity",
    "params": {"profile": "log_singular", "k": 1, "z2_norm": 0.0},
    "samples": 150_000,
    "seed": 42,
}


def test_list_prints_catalog():
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC_ROOT + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "holoext.cli", "list"],
        capture_output=True,
        text=True,
        check=True,
        env=env,
    )
    for name in SCENARIO_SPECS:
        assert name in proc.stdout


def test_run_writes_report_and_exits_zero(tmp_path, monkeypatch):
    monkeypatch.setenv("HOLOEXT_OUT_DIR", str(tmp_path / "reports"))
    config = write_config(tmp_path, FAST_FUBINI)
    code = main(["run", "--config", str(config), "--format", "json"])
    assert code == 0
    report_path = tmp_path / "reports" / "fubini_identity_report.json"
    assert report_path.exists()
    payload = json.loads(report_path.read_text())
    assert payload["scenario"] == "fubini_identity"
    assert payload["seed"] == 42
    assert payload["version"]
    assert {"name", "value", "error", "provenance"} <= set(payload["values"][0])
    assert {"name", "pass", "lhs", "rhs", "tol"} <= set(payload["assertions"][0])
    assert all(entry["pass"] for entry in payload["assertions"])


def test_reports_are_deterministic(tmp_path):
    config = write_config(tmp_path, FAST_FUBINI)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["run", "--config", str(config), "--out", str(out1)]) == 0
    assert main(["run", "--config", str(config), "--out", str(out2)]) == 0
    body1 = json.loads(out1.read_text())
    body2 = json.loads(out2.read_text())
    body1.pop("wall_clock_s")
    body2.pop("wall_clock_s")
    assert json.dumps(body1, sort_keys=True) == json.dumps(body2, sort_keys=True)


def test_cli_seed_and_samples_overrides(tmp_path):
    config = write_config(tmp_path, {**FAST_FUBINI, "seed": 1})
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    assert main(["run", "--config", str(config), "--out", str(out_a)]) == 0
    assert (
        main(
            [
                "run",
                "--config",
                str(config),
                "--seed",
                "2",
                "--samples",
                "100000",
                "--out",
                str(out_b),
            ]
        )
        == 0
    )
    a = json.loads(out_a.read_text())
    b = json.loads(out_b.read_text())
    assert a["seed"] == 1 and b["seed"] == 2
    mc_a = [v for v in a["values"] if v["provenance"] == "monte-carlo"][0]
    mc_b = [v for v in b["values"] if v["provenance"] == "monte-carlo"][0]
    assert mc_a["value"] != mc_b["value"]


def test_exit_one_on_failed_assertion(tmp_path):
    # an unreachable Monte Carlo tolerance forces a clean failure
    payload = {**FAST_FUBINI, "tolerances": {"mc": 1e-12}}
    config = write_config(tmp_path, payload)
    out = tmp_path / "fail.json"
    assert main(["run", "--config", str(config), "--out", str(out)]) == 1
    body = json.loads(out.read_text())
    failed = [a for a in body["assertions"] if not a["pass"]]
    assert failed and failed[0]["name"] == "mc_oracle_relative"


def test_missing_config_is_usage_error(tmp_path):
    assert main(["run", "--config", str(tmp_path / "absent.json")]) == 2


def test_malformed_json_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", "--config", str(bad)]) == 2


def test_unknown_scenario_is_usage_error(tmp_path):
    config = write_config(tmp_path, {"scenario": "unknown"})
    assert main(["run", "--config", str(config)]) == 2


def test_unknown_parameter_is_usage_error(tmp_path):
    config = write_config(
        tmp_path,
        {"scenario": "bound_ratio", "params": {"m": 2}, "seed": 1, "samples": 1000},
    )
    assert main(["run", "--config", str(config)]) == 2


def test_missing_seed_is_usage_error(tmp_path):
    config = write_config(tmp_path, {"scenario": "bound_ratio", "samples": 1000})
    assert main(["run", "--config", str(config)]) == 2


def test_unknown_config_field_rejected():
    with pytest.raises(Exception):
        ScenarioConfig.from_mapping({"scenario": "bound_ratio", "extra": 1})


def test_run_scenario_table_rendering():
    config = ScenarioConfig.from_mapping(
        {"scenario": "radial_minimal", "params": {"n": 1, "k": 1}}
    )
    report = run_scenario(config)
    table = report.to_table()
    assert "radial_minimal" in table
    assert "result: PASS" in table
    assert "minimal_norm_squared" in table


def test_report_exit_contract_matches_passed_flag(tmp_path):
    config = write_config(tmp_path, FAST_FUBINI)
    out = tmp_path / "ok.json"
    code = main(["run", "--config", str(config), "--out", str(out)])
    body = json.loads(out.read_text())
    assert (code == 0) == all(a["pass"] for a in body["assertions"])

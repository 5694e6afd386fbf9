"""CLI behavior: subcommands, file outputs, and the exit-code contract.

0 = success, 2 = configuration/schema error, 3 = energy-audit failure,
1 = internal error.
"""

import json
import subprocess
import sys

import pytest

from ehsim import cli, engine, sizing
from ehsim.errors import AuditError


def run_cli(*argv):
    return cli.main(list(argv))


class TestRun:
    def test_builtin_to_dir(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert run_cli("run", "--builtin", "beacon", "--out", str(out)) == 0
        rep = json.loads((out / "report.json").read_text())
        assert rep["counters"]["packets_sent"] == 1
        wave = (out / "waveform.csv").read_text()
        assert wave.startswith("t,v_storage,phase,load_power,event\n")
        assert "beacon" in capsys.readouterr().out

    def test_builtin_to_stdout(self, capsys):
        assert run_cli("run", "--builtin", "beacon") == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["outages"] == 0

    def test_scenario_file(self, tmp_path, capsys):
        from ehsim.scenarios import get_builtin
        path = tmp_path / "s.json"
        path.write_text(json.dumps(get_builtin("beacon")))
        assert run_cli("run", str(path)) == 0
        assert json.loads(capsys.readouterr().out)["name"] == "beacon"

    def test_stride_forwarded(self, tmp_path):
        out = tmp_path / "o"
        assert run_cli("run", "--builtin", "beacon", "--stride", "3500",
                       "--out", str(out)) == 0
        n = (out / "waveform.csv").read_text().count("\n")
        assert n == 1 + 1 + 100  # header + initial row + 350000/3500 strided rows

    def test_missing_file_is_config_error(self, capsys):
        assert run_cli("run", "/nonexistent/path.json") == 2
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_json_is_config_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run_cli("run", str(path)) == 2
        assert "not valid JSON" in capsys.readouterr().err

    def test_schema_violation_names_field(self, tmp_path, capsys):
        from ehsim.scenarios import get_builtin
        doc = get_builtin("beacon")
        doc["storage"]["capacitance"] = -1.0
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        assert run_cli("run", str(path)) == 2
        assert "storage.capacitance" in capsys.readouterr().err

    def test_file_and_builtin_conflict(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        path.write_text("{}")
        assert run_cli("run", str(path), "--builtin", "beacon") == 2

    def test_audit_failure_exit_code(self, monkeypatch, capsys):
        def broken_audit(report):
            raise AuditError("books do not balance", breakdown={"residual": 1.0})
        monkeypatch.setattr(engine, "energy_audit", broken_audit)
        assert run_cli("run", "--builtin", "beacon") == 3
        err = capsys.readouterr().err
        assert "audit failure" in err and "residual" in err

    def test_internal_error_exit_code(self, monkeypatch, capsys):
        def boom(doc, stride=None):
            raise RuntimeError("kernel fault")
        monkeypatch.setattr(engine, "simulate", boom)
        assert run_cli("run", "--builtin", "beacon") == 1
        assert "internal error" in capsys.readouterr().err


class TestSweep:
    def test_to_dir(self, tmp_path):
        out = tmp_path / "sw"
        assert run_cli("sweep", "--builtin", "bridge-apc",
                       "--param", "solution.fs", "--values", "4,20",
                       "--out", str(out)) == 0
        assert (out / "sweep.csv").exists()
        assert (out / "report_000.json").exists()
        assert (out / "report_001.json").exists()
        rep0 = json.loads((out / "report_000.json").read_text())
        assert rep0["name"] == "bridge-apc[solution.fs=4]"

    def test_to_stdout(self, capsys):
        assert run_cli("sweep", "--builtin", "bridge-apc",
                       "--param", "solution.fs", "--values", "4,20") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("solution.fs,")
        assert len(lines) == 3

    def test_bad_param_path(self, capsys):
        assert run_cli("sweep", "--builtin", "beacon",
                       "--param", "solution.nope", "--values", "1") == 2

    def test_empty_values(self, capsys):
        assert run_cli("sweep", "--builtin", "beacon",
                       "--param", "solution.v_pstart", "--values", ",") == 2


class TestSize:
    def test_min_capacitance_json(self, capsys):
        assert run_cli("size", "--e-task", "100e-6", "--v-start", "5.0",
                       "--v-close", "3.0") == 0
        out = json.loads(capsys.readouterr().out)
        assert out["min_capacitance"] == pytest.approx(
            sizing.min_capacitance(100e-6, 0.0, 1.0, 5.0, 3.0))
        assert "recharge_time" not in out

    def test_recharge_time_optional(self, capsys):
        assert run_cli("size", "--e-task", "100e-6", "--v-start", "5.0",
                       "--v-close", "3.0", "--capacitance", "6800e-6",
                       "--p-eff", "167e-6") == 0
        out = json.loads(capsys.readouterr().out)
        assert out["recharge_time"] == pytest.approx(
            sizing.recharge_time(6800e-6, 3.0, 5.0, 167e-6))

    def test_recharge_requires_both(self, capsys):
        assert run_cli("size", "--e-task", "1e-6", "--v-start", "5.0",
                       "--v-close", "3.0", "--capacitance", "1e-6") == 2

    def test_bad_domain_is_config_error(self, capsys):
        assert run_cli("size", "--e-task", "1e-6", "--v-start", "3.0",
                       "--v-close", "3.0") == 2


class TestBand:
    def test_verdicts_json(self, capsys):
        assert run_cli("band", "--capacitance", "4700e-6",
                       "--v-psleep", "2.4", "--v-pclose", "2.2",
                       "--e-sample", "1.29e-6", "--base-power", "27.005e-6",
                       "--checkpoint-energy", "206.8e-6", "--harvest", "40e-6",
                       "--max-dv-dt", "0.05", "--fs", "0.1,4,20") == 0
        rows = json.loads(capsys.readouterr().out)
        assert [r["verdict"] for r in rows] == ["undersampled", "feasible", "oversampled"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ehsim", "library"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "ble_beacon_tx" in json.loads(proc.stdout)["ops"]


class TestLibraryAndValidate:
    def test_library_dump(self, capsys):
        assert run_cli("library") == 0
        out = json.loads(capsys.readouterr().out)
        assert out["ops"]["ble_beacon_tx"]["energy"] == pytest.approx(9.86e-6)
        assert "beacon" in out["scenarios"]

    def test_validate_ok(self, tmp_path, capsys):
        from ehsim.scenarios import get_builtin
        path = tmp_path / "ok.json"
        path.write_text(json.dumps(get_builtin("lora")))
        assert run_cli("validate", str(path)) == 0
        assert "valid" in capsys.readouterr().out

    def test_validate_lists_all_problems(self, tmp_path, capsys):
        from ehsim.scenarios import get_builtin
        doc = get_builtin("beacon")
        doc["storage"]["capacitance"] = -1.0
        doc["sim"]["dt"] = 0.0
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        assert run_cli("validate", str(path)) == 2
        err = capsys.readouterr().err
        assert "storage.capacitance" in err and "sim.dt" in err

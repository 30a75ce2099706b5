from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from coulomb1d.cli import CONFIG_ENV, EXIT_FAIL, EXIT_OK, EXIT_USAGE, dumps, run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)


def test_scatter_json(capsys):
    code, out, _ = run(capsys, "scatter", "--alpha", "1", "--k", "0.5")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == "coulomb1d/1"
    assert doc["header"]["command"] == "scatter"
    data = doc["data"]
    assert abs(data["abs2T"] - data["closed_form"]["abs2T"]) < 1e-12
    assert data["unitarity_residual"] < 1e-10
    assert data["regime"] == "regular"


def test_scatter_generic_extension_numeric(capsys):
    code, out, _ = run(capsys, "scatter", "--alpha", "1", "--k", "1",
                       "--v-plus-minus-v", "0.2", "--v-plus-plus-w", "-0.3", "--numeric")
    assert code == EXIT_OK
    data = json.loads(out)["data"]
    assert abs(data["numeric"]["A_R"]["re"] - data["A_R"]["re"]) < 1e-12
    # generic boundary values need not conserve the current
    assert data["unitarity_residual"] > 1


def test_scatter_usage_errors(capsys):
    assert run(capsys, "scatter", "--alpha", "1")[0] == EXIT_USAGE
    assert run(capsys, "scatter", "--alpha", "1", "--k", "-1")[0] == EXIT_USAGE
    assert run(capsys, "scatter", "--alpha", "5", "--k", "0.01")[0] == EXIT_USAGE
    assert run(capsys, "bogus")[0] == EXIT_USAGE


def test_scatter_tolerance_failure(capsys):
    code, _, _ = run(capsys, "scatter", "--alpha", "1", "--k", "0.5", "--unitarity-tol", "1e-30")
    assert code == EXIT_FAIL


def test_sweep_csv_and_determinism(capsys):
    argv = ("sweep", "--alpha-num", "3", "--k-num", "4")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    rows = list(csv.reader(io.StringIO(out1)))
    assert rows[0][:2] == ["alpha", "k"]
    assert len(rows) == 1 + 12
    for row in rows[1:]:
        assert float(row[-1]) < 1e-10


def test_sweep_free_limit(capsys):
    assert run(capsys, "sweep", "--alphas", "0", "--ks", "1")[0] == EXIT_USAGE
    code, out, _ = run(capsys, "sweep", "--alphas", "0", "1", "--ks", "1", "--free-limit", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)["data"]
    assert rows[0]["abs2T"] == 1


def test_sweep_grid_validation(capsys):
    assert run(capsys, "sweep", "--alpha-num", "0")[0] == EXIT_USAGE


def test_bound_states(capsys):
    code, out, _ = run(capsys, "bound-states", "--alpha", "-1", "--n-max", "3")
    assert code == EXIT_OK
    data = json.loads(out)["data"]
    energies = [row["E"] for row in data["states"]] if isinstance(data, dict) else [row["E"] for row in data]
    for n, e in enumerate(energies, 1):
        assert abs(e + 1 / (4 * n * n)) < 1e-12
    code, out, _ = run(capsys, "bound-states", "--alpha", "1")
    assert code == EXIT_OK and "no bound states" in out.lower()


def test_correction_forms(capsys):
    code, out, _ = run(capsys, "correction", "--alpha", "1", "--k", "1", "--format", "csv")
    forms = [row[0] for row in csv.reader(io.StringIO(out))][1:]
    assert code == EXIT_OK and forms == ["closed", "series"]
    code, out, _ = run(capsys, "correction", "--alpha", "40", "--k", "1", "--format", "csv")
    assert [row[0] for row in csv.reader(io.StringIO(out))][1:] == ["closed", "series", "asymptotic"]
    assert run(capsys, "correction", "--alpha", "1", "--k", "1", "--form", "asymptotic")[0] == EXIT_USAGE


def test_verify_suites(capsys):
    for suite in ("continuation", "residuals", "unitarity"):
        code, out, _ = run(capsys, "verify", "--suite", suite)
        assert code == EXIT_OK, suite
        assert json.loads(out)["data"]["passed"] is True
    # the identity suite reports the minus-side Wronskian mismatch
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert code == EXIT_FAIL
    assert "W8" in out


def _digits_in(out):
    value = json.loads(out)["data"]["abs2T"]
    return len(repr(value).replace("0.", "").lstrip("0").replace(".", ""))


def test_config_precedence(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "a.cfg"
    cfg.write_text("# settings\ndigits = 5\n", encoding="utf-8")
    env_cfg = tmp_path / "b.cfg"
    env_cfg.write_text("digits = 8\n", encoding="utf-8")
    base = ("scatter", "--alpha", "1", "--k", "0.5")
    monkeypatch.setenv(CONFIG_ENV, str(env_cfg))
    assert _digits_in(run(capsys, *base)[1]) <= 8
    assert _digits_in(run(capsys, *base, "--config", str(cfg))[1]) <= 5
    assert _digits_in(run(capsys, *base, "--config", str(cfg), "--digits", "3")[1]) <= 3


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("unknown_key = 1\n", encoding="utf-8")
    assert run(capsys, "scatter", "--alpha", "1", "--k", "1", "--config", str(bad))[0] == EXIT_USAGE
    assert run(capsys, "scatter", "--alpha", "1", "--k", "1", "--config", str(tmp_path / "missing"))[0] == EXIT_USAGE


def test_dumps_is_stable():
    obj = {"b": 1j, "a": [float("nan"), 0.1]}
    text = dumps(obj)
    assert text == dumps(obj)
    assert text.index('"b"') < text.index('"a"')
    doc = json.loads(text)
    assert doc["a"][0] == "nan" and doc["b"] == {"re": 0.0, "im": 1.0}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coulomb1d", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout

"""Command-line interface tests, run in process through main()."""

import json
import math
import subprocess
import sys

import pytest

from qwalk.cli import main

BOX = ["--boundary", "dirichlet", "--L", "0", "--R", "30", "--x0", "13"]


def run_cli(*argv):
    return main(list(argv))


def read_rows(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# ")
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    return lines[0], header, rows


def test_walk_t_zero_single_record(tmp_path):
    out = tmp_path / "walk.csv"
    assert run_cli("walk", "--boundary", "none", "--x0", "0",
                   "--t", "0", "--out", str(out)) == 0
    meta, header, rows = read_rows(out)
    assert header == ["x", "t", "re", "im", "prob"]
    assert rows == [["0", "0", "1", "0", "1"]]


def test_walk_metadata_records_plan(tmp_path):
    out = tmp_path / "walk.csv"
    assert run_cli("walk", *BOX, "--t", "60", "--out", str(out)) == 0
    meta, header, rows = read_rows(out)
    assert "k=12" in meta
    assert "boundary=dirichlet" in meta
    assert "epsilon=1e-05" in meta
    assert len(rows) == 31  # one record per box site at the single time


def test_walk_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["walk", *BOX, "--t-max", "5", "--t-steps", "10"]
    assert run_cli(*args, "--out", str(a)) == 0
    assert run_cli(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_walk_json_round_trip(tmp_path):
    out = tmp_path / "walk.json"
    assert run_cli("walk", *BOX, "--t", "60", "--format", "json",
                   "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["spec"] == {
        "boundary": "dirichlet", "L": 0, "R": 30, "x0": 13, "q": 0.0}
    assert payload["method"] == "series"
    assert payload["truncation"]["k"] == 12
    assert payload["truncation"]["fallback_used"] is False
    assert payload["sites"] == list(range(0, 31))
    assert payload["times"] == [60.0]
    assert len(payload["data"]) == 31
    norm = sum(re * re + im * im for (re, im), in payload["data"])
    assert norm == pytest.approx(1.0, abs=1e-4)


def test_walk_csv_json_agree(tmp_path):
    csv_out, json_out = tmp_path / "w.csv", tmp_path / "w.json"
    args = ["walk", *BOX, "--t", "7.5"]
    assert run_cli(*args, "--out", str(csv_out)) == 0
    assert run_cli(*args, "--format", "json", "--out", str(json_out)) == 0
    payload = json.loads(json_out.read_text())
    _, _, rows = read_rows(csv_out)
    for row, (x, series_row) in zip(rows, zip(payload["sites"],
                                              payload["data"])):
        assert int(row[0]) == x
        re, im = series_row[0]
        assert float(row[2]) == pytest.approx(re, abs=1e-14)
        assert float(row[3]) == pytest.approx(im, abs=1e-14)


def test_walk_series_matches_spectral_cli(tmp_path):
    series_out = tmp_path / "series.csv"
    spectral_out = tmp_path / "spectral.csv"
    args = ["walk", *BOX, "--t", "20", "--epsilon", "1e-6"]
    assert run_cli(*args, "--out", str(series_out)) == 0
    assert run_cli(*args, "--method", "spectral",
                   "--out", str(spectral_out)) == 0
    _, _, series_rows = read_rows(series_out)
    _, _, spectral_rows = read_rows(spectral_out)
    worst = max(
        math.hypot(float(a[2]) - float(b[2]), float(a[3]) - float(b[3]))
        for a, b in zip(series_rows, spectral_rows))
    assert worst < 1e-6


def test_walk_ode_method(tmp_path):
    out = tmp_path / "ode.csv"
    assert run_cli("walk", "--boundary", "left", "--L", "0", "--x0", "2",
                   "--t", "1", "--method", "ode", "--out", str(out)) == 0
    meta, _, rows = read_rows(out)
    assert "method=ode" in meta
    by_site = {int(r[0]): complex(float(r[2]), float(r[3])) for r in rows}
    assert by_site[0] == 0j
    assert by_site[1] == pytest.approx(1j * 0.7056680572312755, abs=1e-7)


def test_truncation_record(capsys):
    assert run_cli("truncation", *BOX, "--t", "60") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,t_threshold,epsilon,N,k,zeta,apriori_bound,fallback_used"
    fields = lines[1].split(",")
    assert fields[0] == "60"
    assert fields[3] == "30"
    assert fields[4] == "12"
    assert fields[7] == "false"
    assert float(fields[6]) < 1e-5


def test_truncation_json(capsys):
    assert run_cli("truncation", *BOX, "--t", "60", "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["k"] == 12
    assert payload["N"] == 30
    assert payload["zeta"] == pytest.approx(8.543284361244629, rel=1e-14)


@pytest.mark.parametrize("argv", [
    ["walk", "--boundary", "dirichlet", "--L", "0", "--x0", "1", "--t", "1"],
    ["walk", "--boundary", "none", "--L", "3", "--x0", "0", "--t", "1"],
    ["walk", "--boundary", "none", "--x0", "0"],
    ["walk", "--boundary", "none", "--x0", "0", "--t", "1", "--t-max", "5"],
    ["walk", "--boundary", "none", "--x0", "0", "--t", "-2"],
    ["walk", "--boundary", "none", "--x0", "0", "--t", "1",
     "--epsilon", "2.0"],
    ["walk", "--boundary", "dirichlet", "--L", "0", "--R", "4",
     "--x0", "0", "--t", "1"],
    ["walk", "--boundary", "none", "--x0", "0", "--t", "1",
     "--method", "spectral"],
    ["truncation", "--boundary", "none", "--t", "1"],
    ["truncation", *BOX],
])
def test_configuration_errors_exit_2(argv, capsys):
    assert run_cli(*argv) == 2
    assert "error:" in capsys.readouterr().err


def test_order_cap_exit_3(monkeypatch, capsys):
    monkeypatch.setenv("QWALK_MAX_ORDER", "64")
    assert run_cli("walk", "--boundary", "none", "--x0", "0", "--t", "60") == 3
    assert "order cap" in capsys.readouterr().err


def test_verify_clean_exit_0(capsys):
    assert run_cli("verify") == 0
    out = capsys.readouterr().out
    assert "properties passed" in out
    assert "FAIL" not in out


def test_verify_perturbed_exit_1(capsys):
    assert run_cli("verify", "--inject-perturbation") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    failing = [line for line in out.splitlines() if "FAIL" in line]
    assert any("unitarity" in line for line in failing)


def test_figure1_files(tmp_path, capsys):
    assert run_cli("figure1", "--t-max", "2", "--t-steps", "4",
                   "--out", str(tmp_path)) == 0
    names = ["none", "left", "dirichlet", "periodic"]
    for name in names:
        path = tmp_path / f"figure1_{name}.csv"
        assert path.exists()
        lines = path.read_text().splitlines()
        assert lines[1] == "x,t,prob"
        sites = 30 if name == "periodic" else 31
        assert len(lines) == 2 + sites * 5
        rows = [line.split(",") for line in lines[2:]]
        # probabilities only, all within [0, 1]
        for row in rows:
            assert 0.0 <= float(row[2]) <= 1.0 + 1e-12
        # the t=0 slice is the start delta at x0 = 13
        for row in rows:
            if float(row[1]) == 0.0:
                assert float(row[2]) == (1.0 if row[0] == "13" else 0.0)
        # box and ring confine the walker, so each time slice sums to 1
        if name in ("dirichlet", "periodic"):
            for t in ("0.5", "1", "1.5", "2"):
                norm = sum(float(row[2]) for row in rows if row[1] == t)
                assert norm == pytest.approx(1.0, abs=1e-4)


def test_figure1_default_horizon_plans_k12(tmp_path):
    assert run_cli("figure1", "--t-steps", "2", "--out", str(tmp_path)) == 0
    meta = (tmp_path / "figure1_dirichlet.csv").read_text().splitlines()[0]
    assert "k=12" in meta
    assert "t_max=60" in meta


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "qwalk.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "walk" in proc.stdout


def test_module_entry_matches_script():
    proc = subprocess.run(
        ["qwalk", "truncation", *BOX, "--t", "60", "--format", "json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["k"] == 12

import csv
import json

import pytest

from partial_grover import diffusion
from partial_grover.cli import SWEEP_FIELDS, main


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_run_n2_standard(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run_cli("run", "--n", 2, "--target", 2, "--mode", "standard", "--reps", "auto", "--out", out) == 0
    report = json.loads(out.read_text())
    assert list(report) == [
        "config", "measured_uts", "repetitions", "success_probability",
        "ledger", "predicted", "wall_time_s",
    ]
    assert report["repetitions"] == 1
    assert abs(report["success_probability"] - 1.0) <= 1e-12
    assert "reps=1" in capsys.readouterr().out


def test_run_json_to_stdout(capsys):
    assert run_cli("run", "--n", 4, "--target", 3) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["config"]["resolved_target"] == 3
    assert "n=4" in captured.err


def test_run_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run_cli("run", "--n", 16, "--mode", "improved", "--eta", 2,
                       "--target", "random", "--seed", 7, "--out", p) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert json.loads(paths[0].read_text())["wall_time_s"] is None


def test_run_timing_flag(tmp_path):
    out = tmp_path / "t.json"
    assert run_cli("run", "--n", 6, "--timing", "--out", out) == 0
    assert json.loads(out.read_text())["wall_time_s"] > 0


def test_run_paper_convention(tmp_path):
    honest, paper = tmp_path / "h.json", tmp_path / "p.json"
    base = ["run", "--n", 12, "--mode", "improved", "--eta", 3, "--target", 5]
    assert run_cli(*base, "--out", honest) == 0
    assert run_cli(*base, "--paper-convention", "--out", paper) == 0
    h, p = json.loads(honest.read_text()), json.loads(paper.read_text())
    assert h["ledger"]["queries"] - p["ledger"]["queries"] == 3
    assert h["ledger"]["nonquery_ops"] - p["ledger"]["nonquery_ops"] == 48


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--n", 16, "--mode", "improved", "--eta", 3],
        ["run", "--n", 16, "--mode", "improved"],
        ["run", "--n", 16, "--mode", "improved", "--eta", 2, "--alpha", 2],
        ["run", "--n", 4, "--target", 16],
        ["run", "--n", 29],
        ["run", "--n", 4, "--reps", "many"],
        ["run", "--n", 4, "--seed", -1],
        ["bogus"],
    ],
)
def test_run_invalid_flags(argv, capsys):
    assert run_cli(*argv) == 2
    assert capsys.readouterr().err.strip()


def test_sweep(tmp_path):
    out = tmp_path / "s.csv"
    assert run_cli("sweep", "--n-min", 10, "--n-max", 20, "--n-step", 2,
                   "--modes", "standard,improved", "--eta", 2, "--out", out) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == SWEEP_FIELDS
    assert all(len(r) == 14 for r in rows)
    body = [dict(zip(rows[0], r)) for r in rows[1:]]
    assert len(body) == 12
    by = {(int(r["n"]), r["mode"]): r for r in body}
    for n in range(10, 21, 2):
        gap = int(by[n, "improved"]["queries_sim"]) - int(by[n, "standard"]["queries_sim"])
        assert 0 <= gap <= 4
    # ordered by (n, mode)
    assert [(int(r["n"]), r["mode"]) for r in body] == sorted(by, key=lambda k: (k[0], k[1] != "standard"))


def test_sweep_deterministic_and_parallel(tmp_path, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--n-min", 4, "--n-max", 9, "--alpha", 1.5, "--seed", 3]
    monkeypatch.setenv("GROVER_THREADS", "1")
    assert run_cli(*args, "--out", a) == 0
    monkeypatch.setenv("GROVER_THREADS", "4")
    assert run_cli(*args, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_csv_precision(tmp_path):
    out = tmp_path / "s.csv"
    assert run_cli("sweep", "--n-min", 8, "--n-max", 8, "--modes", "improved", "--eta", 2, "--out", out) == 0
    row = list(csv.DictReader(out.open()))[0]
    assert float(row["uts_measured"]) == pytest.approx(0.267578125, abs=1e-15)
    assert "," not in row["nonquery_analytic"]


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--n-min", 5, "--n-max", 4, "--eta", 2],
        ["sweep", "--n-min", 4, "--n-max", 6, "--eta", 2],
        ["sweep", "--n-min", 4, "--n-max", 6, "--modes", "fast", "--eta", 2],
        ["sweep", "--n-min", 4, "--n-max", 6, "--n-step", 0, "--eta", 2],
    ],
)
def test_sweep_invalid(argv):
    assert run_cli(*argv) == 2


def test_costs(capsys):
    assert run_cli("costs", "--n", 64, "--k-query", 1, "--optimal") == 0
    assert "reduction factor: 3.5556" in capsys.readouterr().out
    assert run_cli("costs", "--n", 16, "--k-query", 5.7708, "--optimal") == 0
    text = capsys.readouterr().out
    alpha = float(text.split("optimal alpha:")[1].split()[0])
    assert abs(alpha - 2.0) < 1e-3
    assert run_cli("costs", "--n", 16, "--k-query", 4, "--optimal") == 0
    assert "warning" in capsys.readouterr().out
    assert run_cli("costs", "--n", 16, "--alpha", 2.5) == 0
    assert run_cli("costs", "--n", 16, "--alpha", 0.5) == 2
    assert run_cli("costs", "--n", 16) == 2


def test_verify(capsys):
    assert run_cli("verify", "--max-n", 6) == 0
    out = capsys.readouterr().out
    assert "composite_u" in out and "FAIL" not in out
    assert run_cli("verify", "--max-n", 12) == 2


def test_verify_corrupted_kernel(monkeypatch, capsys):
    real = diffusion.inversion_about_average

    def broken(state, ledger=None):
        real(state, ledger)
        state.amplitudes[0] *= 1.001
        return state

    monkeypatch.setattr(diffusion, "inversion_about_average", broken)
    assert run_cli("verify", "--max-n", 3, "--trials", 4) == 1
    assert "inversion_about_average" in capsys.readouterr().err

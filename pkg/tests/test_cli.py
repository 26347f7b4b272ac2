import os
import subprocess
import sys

import numpy as np
import pytest

from diagscale import cli, replica


def run_cli(args, env_extra=None):
    env = os.environ.copy()
    env.update(env_extra or {})
    return subprocess.run(
        [sys.executable, "-m", "diagscale.cli"] + args,
        capture_output=True, text=True, env=env)


def test_solve_identity(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("1,0,0\n0,1,0\n0,0,1\n")
    r = run_cli(["solve", str(f)])
    assert r.returncode == 0
    assert "w = 1.0 1.0 1.0" in r.stdout


def test_solve_not_copositive(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("1,-2\n-2,1\n")
    r = run_cli(["solve", str(f)])
    assert r.returncode == 2


def test_solve_ragged_file(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("1,0\n0,1,2\n")
    r = run_cli(["solve", str(f)])
    assert r.returncode == 1
    assert ":2:" in r.stderr


def test_solve_missing_file():
    r = run_cli(["solve", "/nonexistent/m.csv"])
    assert r.returncode == 1


def test_predict_identity_curve():
    r = run_cli(["predict", "--omega", "0", "--alpha", "1"])
    assert r.returncode == 0
    header, row = r.stdout.strip().splitlines()
    record = dict(zip(header.split(","), row.split(",")))
    assert float(record["cosine"]) == pytest.approx(0.8838835, abs=1e-6)


def test_predict_residuals_small():
    r = run_cli(["predict", "--omega", "1", "--alpha", "2", "--format", "json"])
    assert r.returncode == 0
    import json
    record = json.loads(r.stdout)
    for key in ("r_nu", "r_mu", "r_eta", "r_w2"):
        assert abs(record[key]) < 1e-8


def test_predict_rejects_negative_omega():
    r = run_cli(["predict", "--omega", "-0.5", "--alpha", "1"])
    assert r.returncode == 1


def test_predict_rejects_small_alpha():
    r = run_cli(["predict", "--omega", "1", "--alpha", "0.5"])
    assert r.returncode == 1


SIM_ARGS = ["simulate", "--model", "identity", "--p", "30",
            "--alphas", "1,2", "--reps", "5", "--seed", "7"]


def test_simulate_csv_contents():
    r = run_cli(SIM_ARGS)
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == cli.SIMULATE_COLUMNS
    assert len(lines) == 3
    for line, alpha in zip(lines[1:], (1.0, 2.0)):
        rec = dict(zip(lines[0].split(","), line.split(",")))
        assert rec["model"] == "identity"
        assert int(rec["p"]) == 30
        assert float(rec["alpha"]) == alpha
        assert int(rec["n"]) == int(round(alpha * 30))
        assert float(rec["theory"]) == pytest.approx(
            replica.cosine_identity(alpha), abs=1e-12)
        # round-trip: the text parses back to the exact float
        assert repr(float(rec["median"])) == rec["median"]


def test_simulate_rejects_odd_stepwise():
    r = run_cli(["simulate", "--model", "stepwise", "--p", "99",
                 "--alphas", "2", "--reps", "2"])
    assert r.returncode == 1


def test_simulate_byte_identical_across_runs_and_threads():
    outs = [run_cli(SIM_ARGS, {"DIAGSCALE_THREADS": t}).stdout
            for t in ("1", "1", "4")]
    assert outs[0] == outs[1] == outs[2]


def test_simulate_svg_and_csv_files(tmp_path):
    csv = tmp_path / "out.csv"
    svg = tmp_path / "out.svg"
    r = run_cli(SIM_ARGS + ["--csv", str(csv), "--svg", str(svg)])
    assert r.returncode == 0
    assert csv.read_text().startswith(cli.SIMULATE_COLUMNS)
    text = svg.read_text()
    assert text.startswith("<svg") and "polyline" in text and "circle" in text


def test_simulate_config_file(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text(
        "model = identity\np = 30\nalphas = 1,2\nreps = 5\nseed = 7\n")
    r = run_cli(["simulate", "--config", str(conf)])
    assert r.returncode == 0
    assert r.stdout == run_cli(SIM_ARGS).stdout


def test_wendel_exact_table():
    r = run_cli(["wendel", "--p", "10", "--ns", "1..10"])
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == cli.WENDEL_COLUMNS
    assert len(lines) == 11
    last = lines[-1].split(",")
    assert float(last[4]) == 1.0  # exact column, n = p


def test_wendel_empirical():
    r = run_cli(["wendel", "--p", "10", "--ns", "5", "--reps", "500",
                 "--seed", "1"])
    rec = dict(zip(cli.WENDEL_COLUMNS.split(","),
                   r.stdout.strip().splitlines()[1].split(",")))
    exact = float(rec["exact"])
    assert exact == pytest.approx(0.5)
    sigma = np.sqrt(exact * (1 - exact) / int(rec["reps"]))
    assert abs(float(rec["empirical"]) - exact) <= 3 * sigma


def test_wendel_phase_transition():
    r = run_cli(["wendel", "--p", "200", "--alphas", "0.4,0.6"])
    lines = r.stdout.strip().splitlines()
    lo = float(lines[1].split(",")[4])
    hi = float(lines[2].split(",")[4])
    assert lo < 0.01 and hi > 0.99


def test_copositivity_alias():
    a = run_cli(["wendel", "--p", "8", "--ns", "1..8"])
    b = run_cli(["copositivity", "--p", "8", "--ns", "1..8"])
    assert a.stdout == b.stdout


def test_wendel_requires_one_grid():
    assert run_cli(["wendel", "--p", "10"]).returncode == 1
    assert run_cli(["wendel", "--p", "10", "--ns", "3", "--alphas", "0.5"]
                   ).returncode == 1


def test_numpy_fallback_matches_numba(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("2,0.3\n0.3,1\n")
    a = run_cli(["solve", str(f)])
    b = run_cli(["solve", str(f)], {"DIAGSCALE_NUMBA": "0"})
    assert a.returncode == b.returncode == 0
    # same iterates up to last-ulp rounding differences between backends
    wa = [float(t) for t in a.stdout.splitlines()[0].split()[2:]]
    wb = [float(t) for t in b.stdout.splitlines()[0].split()[2:]]
    assert np.allclose(wa, wb, atol=1e-12)

import json

import numpy as np
import pytest

from riesz_lab.cli import main
from riesz_lab.io import load_points


def test_greedy_command(tmp_path, capsys):
    out = tmp_path / "g.csv"
    assert main(["greedy", "--set", "sphere2", "--s", "1.5", "--n", "20", "--seed", "7", "--out", str(out)]) == 0
    omega = load_points(out)
    assert omega.N == 20 and omega.provenance == "greedy" and omega.seed == 7
    assert json.loads(capsys.readouterr().out)["N"] == 20


def test_minimize_command(tmp_path, capsys):
    out, rep = tmp_path / "m.csv", tmp_path / "m.json"
    code = main(["minimize", "--set", "disk", "--s", "1.0", "--n", "16", "--restarts", "2", "--seed", "3",
                 "--out", str(out), "--report", str(rep)])
    assert code == 0
    info = json.loads(rep.read_text())
    assert info["restarts"] == 2 and info["N"] == 16 and "converged" in info
    assert load_points(out).provenance == "minimized"


def test_equilibrium_command(tmp_path, capsys):
    rep = tmp_path / "e.json"
    assert main(["equilibrium", "--set", "disk", "--s", "1.0", "--probe-regularity", "--out", str(rep)]) == 0
    d = json.loads(rep.read_text())
    names = {v["name"] for v in d["verdicts"]}
    assert {"normalization", "boundary_slope", "interior_slope"} <= names
    assert all(v["passed"] for v in d["verdicts"])


def test_diagnose_command(tmp_path, capsys):
    pts = tmp_path / "p.csv"
    t = 2 * np.pi * np.arange(4) / 4
    pts.write_text("x0,x1\n" + "".join(f"{np.cos(a):.17g},{np.sin(a):.17g}\n" for a in t))
    assert main(["diagnose", str(pts), "--set", "circle", "--s", "1", "--budget", "5000"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["provenance"] == "explicit"
    assert d["delta"] == pytest.approx(np.sqrt(2))
    assert d["eta"] == pytest.approx(2 * np.sin(np.pi / 8), abs=1e-6)


def test_suite_exit_codes(tmp_path, capsys):
    ok = tmp_path / "ok.json"
    ok.write_text(json.dumps({"name": "ok", "set": "circle", "kernel": "log", "mode": "minimize",
                              "n_schedule": [8, 16, 32, 64], "restarts": 1,
                              "expect": {"delta_slope": [-1.15, -0.85]}}))
    assert main(["suite", "--config", str(ok), "--out-dir", str(tmp_path)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "set": "circle", "kernel": "log", "mode": "minimize",
                               "n_schedule": [8, 16, 32, 64], "restarts": 1,
                               "expect": {"delta_slope": [0.5, 1.0]}}))
    assert main(["suite", "--config", str(bad)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_suite_adhoc_and_list(tmp_path, capsys):
    assert main(["suite", "--list"]) == 0
    assert "fekete" in capsys.readouterr().out.split()
    assert main(["suite", "--set", "circle", "--log", "--mode", "minimize", "--n-schedule", "4,8",
                 "--restarts", "1"]) == 0


def test_invalid_input_exits_2(tmp_path, capsys):
    assert main(["suite", "--name", "no_such_experiment"]) == 2
    assert main(["suite", "--set", "circle", "--log", "--n-schedule", "8,4"]) == 2
    assert main(["equilibrium", "--set", "torus", "--s", "1.0"]) == 2
    assert main(["minimize", "--set", "moebius", "--s", "1.0", "--n", "4", "--out", str(tmp_path / "x.csv")]) == 2
    pts = tmp_path / "off.csv"
    pts.write_text("x0,x1\n1.1,0\n")
    assert main(["diagnose", str(pts), "--set", "circle"]) == 2
    assert "error:" in capsys.readouterr().err


def test_kernel_flags_are_exclusive():
    with pytest.raises(SystemExit):
        main(["greedy", "--set", "circle", "--s", "1", "--log", "--n", "3", "--out", "x.csv"])


def test_suite_canned_by_name(tmp_path, capsys):
    assert main(["suite", "--name", "small_n", "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "experiment small_n" in out and "ALL PASS" in out
    assert (tmp_path / "small_n.json").exists()

import json

import numpy as np
import pytest

from riesz_lab import experiments as ex
from riesz_lab.energy import Kernel
from riesz_lab.geometry import NAMED_SETS
from riesz_lab.io import load_points


def cfg(**kw):
    base = dict(name="t", set=NAMED_SETS["circle"], kernel=Kernel.log(), mode="scaling_suite",
                n_schedule=[8, 16, 32, 64], restarts=1, probe_budget=2000)
    base.update(kw)
    return ex.ExperimentConfig(**base)


@pytest.mark.parametrize("kw", [
    dict(mode="anneal"),
    dict(n_schedule=[]),
    dict(n_schedule=[16, 8, 32, 64]),
    dict(n_schedule=[8, 8, 16, 32]),
    dict(n_schedule=[1, 2, 4, 8]),
    dict(restarts=0),
    dict(candidate_budget=10),
    dict(probe_budget=10),
    dict(max_iters=0),
    dict(expect={"floor_ratio": [0.2, 1.0]}),
    dict(expect={"delta_slope": [0.0]}),
    dict(expect={"delta_slope": [1.0, 0.0]}),
    dict(kernel=Kernel.riesz(1.0), expect={"wiener": [0.0, 1.0]}),
    dict(mode="equilibrium", set=NAMED_SETS["torus"], kernel=Kernel.riesz(1.0)),
])
def test_invalid_configs_fail_before_running(kw):
    with pytest.raises(ex.ConfigError):
        cfg(**kw)


def test_config_json_roundtrip(tmp_path):
    c = cfg(expect={"delta_slope": [-1.15, -0.85]})
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_dict()))
    assert ex.ExperimentConfig.from_json(path) == c
    short = {"name": "x", "set": "sphere2", "kernel": "s=1.5", "mode": "minimize", "n_schedule": [4, 8]}
    c2 = ex.ExperimentConfig.from_dict(short)
    assert c2.set == NAMED_SETS["sphere2"] and c2.kernel == Kernel.riesz(1.5)
    with pytest.raises(ex.ConfigError):
        ex.ExperimentConfig.from_dict({"name": "x", "mode": "minimize"})


def test_scaling_suite_on_circle_log(tmp_path):
    c = cfg(n_schedule=[64, 128, 256, 512], expect={"delta_slope": [-1.15, -0.85]}, out_dir=str(tmp_path))
    rep = ex.run_experiment(c)
    assert rep.passed
    f = {f["name"]: f for f in rep.fits}["delta"]
    assert abs(f["slope"] + 1.0) < 0.01
    for N in (64, 128, 256, 512):
        assert (tmp_path / f"t_N{N}.csv").exists()
    d = json.loads((tmp_path / "t.json").read_text())
    assert set(d) == {"meta", "rows", "fits", "verdicts"}
    assert [r["N"] for r in d["rows"]] == [64, 128, 256, 512]
    assert (tmp_path / "t.csv").exists() and "ALL PASS" in (tmp_path / "t.txt").read_text()


def test_greedy_points_file_on_sphere(tmp_path):
    c = cfg(mode="greedy", set=NAMED_SETS["sphere2"], kernel=Kernel.riesz(3.0), n_schedule=[512],
            out_dir=str(tmp_path))
    ex.run_experiment(c)
    omega = load_points(tmp_path / "t_N512.csv")
    assert omega.N == 512 and omega.provenance == "greedy"
    assert np.max(np.abs(np.linalg.norm(omega.points, axis=1) - 1)) <= 1e-10


def test_minimize_log_interval_three_points():
    c = cfg(mode="minimize", set=NAMED_SETS["interval"], n_schedule=[3], restarts=None)
    rep = ex.run_experiment(c)
    assert rep.meta["metrics"]["delta"] == pytest.approx(1.0, abs=1e-6)
    assert rep.meta["metrics"]["energy"] == pytest.approx(-2 * np.log(2), abs=1e-9)


def test_reports_are_byte_identical(tmp_path):
    snapshots = []
    for _ in range(2):
        ex._greedy_cached.cache_clear()
        ex._minimize_cached.cache_clear()
        ex.run_experiment(cfg(set=NAMED_SETS["sphere2"], kernel=Kernel.riesz(1.5), out_dir=str(tmp_path)))
        ex.run_experiment(cfg(name="g", mode="greedy", set=NAMED_SETS["torus"], kernel=Kernel.riesz(1.5),
                              n_schedule=[40, 50, 60, 70], out_dir=str(tmp_path)))
        snapshots.append({f.name: f.read_bytes() for f in sorted(tmp_path.iterdir())})
    assert len(snapshots[0]) == 2 * (4 + 3)
    assert snapshots[0] == snapshots[1]


def test_failed_verdict_marks_report():
    rep = ex.run_experiment(cfg(expect={"delta_slope": [5.0, 6.0]}))
    assert not rep.passed and "SOME VERDICTS FAILED" in ex.summary(rep)


def test_fekete_oracle_matches_closed_forms():
    np.testing.assert_allclose(ex.fekete_points(3), [-1, 0, 1], atol=1e-14)
    np.testing.assert_allclose(ex.fekete_points(4), [-1, -1 / np.sqrt(5), 1 / np.sqrt(5), 1], atol=1e-13)
    r = np.sqrt(3 / 7)
    np.testing.assert_allclose(ex.fekete_points(5), [-1, -r, 0, r, 1], atol=1e-13)


def test_every_criterion_has_a_canned_experiment():
    assert sorted(ex.CRITERIA) == list(range(1, 11))
    for names in ex.CRITERIA.values():
        assert names and all(n in ex.CANNED for n in names)

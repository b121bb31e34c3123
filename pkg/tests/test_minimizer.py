import math

import numpy as np
import pytest

from riesz_lab.diagnostics import separation
from riesz_lab.energy import Configuration, Kernel, total_energy
from riesz_lab.geometry import NAMED_SETS
from riesz_lab.minimizer import MinimizePlan, descend_step, minimize_energy, projected_gradient

I, S1, S2 = NAMED_SETS["interval"], NAMED_SETS["circle"], NAMED_SETS["sphere2"]


def circle_points(theta):
    theta = np.asarray(theta, float)
    return np.c_[np.cos(theta), np.sin(theta)]


def test_two_points_on_circle():
    r = minimize_energy(MinimizePlan(Kernel.riesz(1.0), S1, 2), seed=0)
    assert r.energy == pytest.approx(1.0, abs=1e-8)
    np.testing.assert_allclose(r.configuration.points[0], -r.configuration.points[1], atol=1e-6)


def test_three_points_on_circle_against_angular_brute_force():
    k = Kernel.riesz(1.0)
    # fix the first point at angle 0, scan the other two angles
    t = np.linspace(0, 2 * np.pi, 721)[1:-1]
    a, b = np.meshgrid(t, t)
    ok = a < b
    a, b = a[ok], b[ok]
    def pair(u, v):
        return 1.0 / (2 * np.abs(np.sin((u - v) / 2)))
    E = 2 * (pair(0, a) + pair(0, b) + pair(a, b))
    i = np.argmin(E)
    # refine on a finer local grid
    aa, bb = np.meshgrid(np.linspace(a[i] - 0.01, a[i] + 0.01, 401), np.linspace(b[i] - 0.01, b[i] + 0.01, 401))
    Ef = 2 * (pair(0, aa) + pair(0, bb) + pair(aa, bb))
    oracle_E = Ef.min()
    j = np.unravel_index(np.argmin(Ef), Ef.shape)
    oracle_delta = separation(circle_points([0.0, aa[j], bb[j]]))

    r = minimize_energy(MinimizePlan(k, S1, 3), seed=1)
    assert separation(r.configuration) == pytest.approx(math.sqrt(3), abs=1e-6)
    assert abs(separation(r.configuration) - oracle_delta) < 1e-4
    assert r.energy == pytest.approx(6 / math.sqrt(3), abs=1e-8)
    assert r.energy <= oracle_E + 1e-12


def test_log_three_points_on_interval():
    r = minimize_energy(MinimizePlan(Kernel.log(), I, 3), seed=0)
    np.testing.assert_allclose(np.sort(r.configuration.points[:, 0]), [-1, 0, 1], atol=1e-6)


def test_postconditions_and_diagnostics(any_set):
    plan = MinimizePlan(Kernel.riesz(1.0), any_set, 20, restarts=3, max_iters=500)
    r = minimize_energy(plan, seed=5)
    d = r.diagnostics
    X = r.configuration.points
    assert r.configuration.provenance == "minimized"
    assert np.max(any_set.residual(X)) <= 1e-10
    assert separation(r.configuration) > 0
    assert r.energy == pytest.approx(total_energy(plan.kernel, X), rel=1e-12)
    assert r.energy <= min(d["initial_energies"])
    assert d["converged"] or d["max_iters_hit"] or d["grad_norm"] > 0
    assert d["converged"] == (d["grad_norm"] <= d["grad_tol"])
    h = np.asarray(d["history"])
    assert np.all(np.diff(h) <= 0)
    assert len(d["restart_energies"]) == 3 and min(d["restart_energies"]) == r.energy


def test_minimize_is_deterministic():
    plan = MinimizePlan(Kernel.riesz(1.5), S2, 16, restarts=2)
    a = minimize_energy(plan, seed=3)
    b = minimize_energy(plan, seed=3)
    np.testing.assert_array_equal(a.configuration.points, b.configuration.points)


@pytest.mark.parametrize("N", [12, 32])
def test_independent_multistarts_agree_on_sphere(N):
    plan = MinimizePlan(Kernel.riesz(1.0), S2, N)
    a = minimize_energy(plan, seed=0).energy
    b = minimize_energy(plan, seed=1).energy
    assert abs(a - b) <= 1e-4 * abs(a)


def test_equally_spaced_optimal_on_circle_small_n():
    for N in (5, 7):
        r = minimize_energy(MinimizePlan(Kernel.log(), S1, N), seed=0)
        th = np.sort(np.arctan2(r.configuration.points[:, 1], r.configuration.points[:, 0]))
        gaps = np.diff(np.r_[th, th[0] + 2 * np.pi])
        np.testing.assert_allclose(gaps, 2 * np.pi / N, atol=1e-5)


def test_circle_log_512_separation_times_n():
    r = minimize_energy(MinimizePlan(Kernel.log(), S1, 512, restarts=1), seed=0)
    assert abs(separation(r.configuration) * 512 / (2 * np.pi) - 1) <= 0.05


def test_plan_validation_and_defaults():
    with pytest.raises(ValueError):
        MinimizePlan(Kernel.riesz(1.0), S2, 1)
    with pytest.raises(ValueError):
        MinimizePlan(Kernel.riesz(1.0), S2, 10, restarts=0)
    with pytest.raises(ValueError):
        MinimizePlan(Kernel.riesz(1.0), S2, 10, grad_tol=0.0)
    p = MinimizePlan(Kernel.riesz(1.0), S2, 64)
    assert p.n_restarts == 8 and MinimizePlan(Kernel.riesz(1.0), S2, 65).n_restarts == 3
    assert p.tol == pytest.approx(1e-9 * 64 ** 1.5)
    assert p.step0 == pytest.approx(0.1 * 64 ** -0.5 * 2.0)


def test_descend_step_examples():
    k = Kernel.riesz(1.0)
    tri = Configuration(S1, circle_points(2 * np.pi * np.arange(3) / 3))
    out = descend_step(k, S1, tri, 0.1)
    np.testing.assert_allclose(out.points, tri.points, atol=1e-10)

    pair = Configuration(I, np.array([[0.1], [0.11]]))
    out = descend_step(k, I, pair, 1e-7)
    assert abs(out.points[1, 0] - out.points[0, 0]) > 0.01
    assert total_energy(k, out) < total_energy(k, pair)

    with pytest.raises(ValueError):
        descend_step(k, I, pair, 0.0)


def test_projected_gradient_blocks_outward_motion_only():
    A = NAMED_SETS["disk"]
    X = np.array([[1.0, 0.0], [0.0, 0.5]])
    G = np.array([[-3.0, 1.0], [-3.0, 1.0]])  # -G points outward at (1, 0)
    P = projected_gradient(A, X, G)
    np.testing.assert_allclose(P, [[0.0, 1.0], [-3.0, 1.0]])
    G = np.array([[3.0, 1.0], [0.0, 0.0]])  # -G points inward: kept
    np.testing.assert_allclose(projected_gradient(A, X, G)[0], [3.0, 1.0])

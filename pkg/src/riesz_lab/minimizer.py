"""Multistart projected gradient descent for near-minimal s-energy configurations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from . import _accel
from .energy import CoincidentPointsError, Configuration, Kernel, min_distance, total_energy
from .geometry import CompactSet


@dataclass(frozen=True)
class MinimizePlan:
    kernel: Kernel
    set: CompactSet
    N: int
    restarts: int | None = None
    max_iters: int = 3000
    grad_tol: float | None = None
    initial_step: float | None = None
    shrink: float = 0.5
    armijo_c: float = 1e-4
    precondition: bool | None = None  # None: only on the interval

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.grad_tol is not None and not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")

    @property
    def n_restarts(self) -> int:
        if self.restarts is not None:
            return self.restarts
        return 8 if self.N <= 64 else 3

    @property
    def tol(self) -> float:
        if self.grad_tol is not None:
            return self.grad_tol
        d = self.set.intrinsic_dim
        return 1e-9 * self.N ** (1.0 + self.kernel.exponent / d)

    @property
    def step0(self) -> float:
        """Initial maximal per-point displacement."""
        if self.initial_step is not None:
            return self.initial_step
        return 0.1 * self.N ** (-1.0 / self.set.intrinsic_dim) * self.set.diameter


class MinimizeResult(NamedTuple):
    configuration: Configuration
    energy: float
    diagnostics: dict


def projected_gradient(A: CompactSet, X, G) -> np.ndarray:
    """Gradient with the constrained directions removed.

    Manifolds: tangential component.  Sets with boundary: at boundary points
    whose descent direction points outward the normal component is dropped.
    """
    if A.is_manifold:
        return A.tangent_project(X, G)
    P = np.array(G, dtype=float)
    n, on_b = A.outward_normals(X)
    if np.any(on_b):
        gn = np.einsum("ij,ij->i", P, n)
        blocked = on_b & (gn < 0.0)  # -G points outward
        P[blocked] -= gn[blocked, None] * n[blocked]
    return P


def descend_step(k: Kernel, A: CompactSet, omega: Configuration, step: float, G=None) -> Configuration:
    """Move every point along its projected negative gradient, then re-project onto A.

    Raises CoincidentPointsError if the move collapses two points.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    X = omega.points
    if G is None:
        G = _accel.energy_gradient(X, k.exponent, k.is_log)
    D = projected_gradient(A, X, G)
    Y = np.ascontiguousarray(A.project(X - step * D))
    if min_distance(Y) == 0.0:
        raise CoincidentPointsError("points collided during descent step")
    return Configuration(A, Y, omega.provenance, omega.seed, check=False)


def _energy(k, X):
    e = 2.0 * _accel.pair_sum(X, k.exponent, k.is_log)
    return e if math.isfinite(e) else math.inf


def _energy_grad(k, X):
    e, G = _accel.energy_and_gradient(X, k.exponent, k.is_log)
    e = 2.0 * e
    return (e if math.isfinite(e) else math.inf), G


def local_weights(k: Kernel, X) -> np.ndarray:
    """Diagonal preconditioner (delta_i / median delta)^(s+2), clipped at 1.

    The Hessian diagonal scales like delta_i^-(s+2), so crowded points (e.g.
    near the endpoints of an interval) get proportionally shorter moves.
    """
    dist, _ = cKDTree(X).query(X, k=2)
    nn = dist[:, 1]
    sigma = k.exponent + 2.0
    return np.minimum((nn / np.median(nn)) ** sigma, 1.0)


def _scaled(plan, X, PG):
    on = plan.set.kind == "interval" if plan.precondition is None else plan.precondition
    return local_weights(plan.kernel, X)[:, None] * PG if on else PG


def _descend(plan: MinimizePlan, X: np.ndarray):
    """One restart chain.  Returns (X, E, info)."""
    k, A = plan.kernel, plan.set
    E, G = _energy_grad(k, X)
    history = [E]
    PG = projected_gradient(A, X, G)
    W = _scaled(plan, X, PG)
    t = None
    X_prev = W_prev = None
    converged = False
    it = 0
    for it in range(1, plan.max_iters + 1):
        gnorm = float(np.max(np.abs(PG)))
        if gnorm <= plan.tol:
            converged = True
            break
        D = W
        dmax = float(np.max(np.linalg.norm(D, axis=1)))
        cap = plan.step0 / dmax
        if t is None:
            t = cap
        elif X_prev is not None:
            # Barzilai-Borwein trial step, capped by the displacement bound
            sv = (X - X_prev).ravel()
            yv = (W - W_prev).ravel()
            sy = float(sv @ yv)
            t = float(sv @ sv) / sy if sy > 0 else 2.0 * t
        t = min(t, cap)
        accepted = False
        for _ in range(60):
            Y = np.ascontiguousarray(A.project(X - t * D))
            E_new, G_new = _energy_grad(k, Y)
            dec = float(np.einsum("ij,ij->", G, X - Y))
            if E_new <= E - plan.armijo_c * dec and E_new <= E:
                accepted = True
                break
            t *= plan.shrink
        if not accepted:
            break
        X_prev, W_prev = X, W
        X, E = Y, E_new
        history.append(E)
        G = G_new
        PG = projected_gradient(A, X, G)
        W = _scaled(plan, X, PG)
    info = {
        "iterations": it,
        "converged": converged,
        "max_iters_hit": not converged and it >= plan.max_iters,
        "stalled": not converged and it < plan.max_iters,
        "grad_norm": float(np.max(np.abs(PG))),
        "grad_tol": plan.tol,
        "history": history,
    }
    return X, E, info


def minimize_energy(plan: MinimizePlan, seed: int = 0, init=None) -> MinimizeResult:
    """Best of ``plan.n_restarts`` projected-descent chains from random starts."""
    best = None
    chains = []
    for restart in range(plan.n_restarts):
        for attempt in range(5):
            if init is not None and restart == 0 and attempt == 0:
                X0 = np.ascontiguousarray(plan.set.project(np.asarray(init, dtype=float).reshape(plan.N, -1)))
            else:
                rng = np.random.default_rng([seed, restart, attempt])
                X0 = np.ascontiguousarray(plan.set.sample(plan.N, rng))
            if min_distance(X0) > 0.0:
                break
        else:
            continue
        E0 = _energy(plan.kernel, X0)
        X, E, info = _descend(plan, X0)
        if min_distance(X) == 0.0 or not math.isfinite(E):
            continue
        info["initial_energy"] = E0
        info["restart"] = restart
        chains.append(info)
        if best is None or E < best[1]:
            best = (X, E, info)
    if best is None:
        raise CoincidentPointsError("every restart collapsed points")
    X, E, info = best
    diagnostics = {
        "restarts": plan.n_restarts,
        "best_restart": info["restart"],
        "iterations": info["iterations"],
        "converged": info["converged"],
        "max_iters_hit": info["max_iters_hit"],
        "grad_norm": info["grad_norm"],
        "grad_tol": plan.tol,
        "restart_energies": [c["history"][-1] for c in chains],
        "initial_energies": [c["initial_energy"] for c in chains],
        "history": info["history"],
    }
    config = Configuration(plan.set, X, "minimized", seed, check=False)
    return MinimizeResult(config, E, diagnostics)

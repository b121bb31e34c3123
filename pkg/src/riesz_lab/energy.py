"""Riesz and logarithmic kernels, discrete energies, potentials and polarization."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from . import _accel
from .geometry import CompactSet

PROVENANCES = ("greedy", "minimized", "explicit")


class CoincidentPointsError(ValueError):
    """Two points of a configuration (or a probe and a point) coincide."""


@dataclass(frozen=True)
class Kernel:
    """Riesz kernel |x-y|^-s, or the log kernel log(1/|x-y|) when ``s is None``."""

    s: float | None = None

    def __post_init__(self):
        if self.s is not None:
            if not self.s > 0:
                raise ValueError("Riesz exponent must be positive")
            object.__setattr__(self, "s", float(self.s))

    @classmethod
    def riesz(cls, s: float) -> "Kernel":
        return cls(s)

    @classmethod
    def log(cls) -> "Kernel":
        return cls(None)

    @property
    def is_log(self) -> bool:
        return self.s is None

    @property
    def exponent(self) -> float:
        """s, with 0 standing in for the log kernel."""
        return 0.0 if self.s is None else self.s

    @property
    def label(self) -> str:
        return "log" if self.s is None else f"s={self.s:g}"

    def to_dict(self) -> dict:
        return {"kernel": "log"} if self.s is None else {"kernel": "riesz", "s": self.s}

    @classmethod
    def from_dict(cls, d: dict) -> "Kernel":
        if d.get("kernel") == "log":
            return cls.log()
        return cls.riesz(float(d["s"]))

    def __call__(self, r):
        return pair_interaction(self, r)

    def derivative(self, r):
        """d/dr of the kernel."""
        r = np.asarray(r, dtype=float)
        if self.s is None:
            return -1.0 / r
        return -self.s * r ** (-self.s - 1.0)


@dataclass
class Configuration:
    """Ordered N-point configuration on a compact set.

    The empirical measure (1/N) sum_j delta_{x_j} is implied by ``points``.
    """

    set: CompactSet
    points: np.ndarray
    provenance: str = "explicit"
    seed: int | None = None
    check: bool = True

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.set.ambient_dim == 1 else pts.reshape(1, -1)
        self.points = pts
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        if self.check:
            self.validate()

    def validate(self, tol: float = 1e-10):
        X = self.points
        if X.ndim != 2 or X.shape[1] != self.set.ambient_dim:
            raise ValueError(f"points must have shape (N, {self.set.ambient_dim}); got {X.shape}")
        if len(X) < 1:
            raise ValueError("a configuration needs at least one point")
        if not np.all(np.isfinite(X)):
            raise ValueError("non-finite coordinates")
        worst = float(np.max(self.set.residual(X)))
        if worst > tol:
            raise ValueError(f"point off the set {self.set.name} (residual {worst:.3g})")
        if len(X) > 1 and min_distance(X) == 0.0:
            raise CoincidentPointsError("configuration has coincident points")

    def __len__(self):
        return len(self.points)

    @property
    def N(self) -> int:
        return len(self.points)

    def prefix(self, k: int) -> "Configuration":
        return Configuration(self.set, self.points[:k].copy(), self.provenance, self.seed, check=False)

    def without(self, j: int) -> np.ndarray:
        return np.delete(self.points, j, axis=0)


def min_distance(X) -> float:
    """Minimum pairwise distance via a kd-tree."""
    X = np.asarray(X, dtype=float)
    d, _ = cKDTree(X).query(X, k=2)
    return float(d[:, 1].min())


def _points(omega) -> np.ndarray:
    if isinstance(omega, Configuration):
        return omega.points
    X = np.ascontiguousarray(np.asarray(omega, dtype=float))
    return X.reshape(-1, 1) if X.ndim == 1 else X


def pair_interaction(k: Kernel, r):
    """r^-s for Riesz kernels, -log r for the log kernel."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise CoincidentPointsError("kernel evaluated at non-positive distance")
    out = -np.log(r) if k.is_log else r ** (-k.s)
    return float(out) if out.ndim == 0 else out


def total_energy(k: Kernel, omega) -> float:
    """Sum of the kernel over ordered pairs i != j (each pair counted twice)."""
    X = _points(omega)
    if len(X) < 2:
        raise ValueError("energy needs at least two points")
    e = 2.0 * _accel.pair_sum(X, k.exponent, k.is_log)
    if not math.isfinite(e):
        raise CoincidentPointsError("coincident points in energy evaluation")
    return e


def potential_sum(k: Kernel, omega, y) -> float:
    """Discrete potential sum_j k(|y - x_j|).  Returns +inf if y is a point of omega."""
    X = _points(omega)
    Y = np.ascontiguousarray(np.atleast_2d(np.asarray(y, dtype=float)))
    if Y.shape[1] != X.shape[1]:
        Y = Y.reshape(-1, X.shape[1])
    return float(_accel.potentials(Y, X, k.exponent, k.is_log)[0])


def potentials(k: Kernel, omega, Y) -> np.ndarray:
    """Vectorized potential_sum over the rows of Y."""
    X = _points(omega)
    Y = np.ascontiguousarray(np.asarray(Y, dtype=float).reshape(-1, X.shape[1]))
    return _accel.potentials(Y, X, k.exponent, k.is_log)


def potential_gradient(k: Kernel, omega, y) -> np.ndarray:
    X = _points(omega)
    return _accel.potential_gradient(np.ascontiguousarray(y, dtype=float), X, k.exponent, k.is_log)


def energy_gradient(k: Kernel, omega) -> np.ndarray:
    """Ambient gradient of the ordered-pair energy with respect to each point (rows)."""
    X = _points(omega)
    if len(X) > 1 and min_distance(X) == 0.0:
        raise CoincidentPointsError("coincident points in gradient evaluation")
    return _accel.energy_gradient(X, k.exponent, k.is_log)


class Polarization(NamedTuple):
    point: np.ndarray
    value: float
    raw_value: float
    index: int


def local_potential_descent(k: Kernel, A: CompactSet, X, y0, steps: int = 50, f0=None):
    """Projected gradient descent of the potential of X started at y0.

    Armijo backtracking; only decreasing moves are accepted, so the returned
    value never exceeds the starting value.
    """
    y = np.asarray(y0, dtype=float).copy()
    f = potential_sum(k, X, y) if f0 is None else f0
    if not math.isfinite(f):
        return y, f
    d0 = float(_accel.nearest_dist(y[None, :], X)[0])
    t = None
    for _ in range(steps):
        g = potential_gradient(k, X, y)
        g = A.tangent_project(y, g)
        gn = float(np.linalg.norm(g))
        if gn == 0.0:
            break
        if t is None:
            t = 0.1 * d0 / gn
        accepted = False
        for _ in range(40):
            y_new = A.project(y - t * g)
            f_new = potential_sum(k, X, y_new)
            dec = float(np.dot(g, y - y_new))
            if math.isfinite(f_new) and f_new <= f - 1e-4 * dec and f_new < f:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        y, f = y_new, f_new
        t *= 2.0
    return y, f


def polarization_min(k: Kernel, omega: Configuration, candidates, refine: bool = True,
                     refine_steps: int = 50, n_starts: int = 4) -> Polarization:
    """Minimize the discrete potential of omega over a candidate set.

    The best raw candidate (lowest index on ties) is found by a full scan.
    With ``refine`` the ``n_starts`` best candidates are each polished by
    projected descent on A and the lowest result is kept.
    """
    X = _points(omega)
    C = np.ascontiguousarray(np.asarray(candidates, dtype=float).reshape(-1, X.shape[1]))
    if len(C) == 0:
        raise ValueError("no candidates")
    vals = _accel.potentials(C, X, k.exponent, k.is_log)
    if not np.any(np.isfinite(vals)):
        raise CoincidentPointsError("every candidate coincides with a configuration point")
    order = np.argsort(vals, kind="stable")
    best = int(order[0])
    raw = float(vals[best])
    y_best, f_best = C[best].copy(), raw
    if refine:
        A = omega.set
        for idx in order[:n_starts]:
            if not math.isfinite(vals[idx]):
                break
            y, f = local_potential_descent(k, A, X, C[idx], refine_steps, f0=float(vals[idx]))
            if f < f_best:
                y_best, f_best = y, f
    return Polarization(y_best, f_best, raw, best)

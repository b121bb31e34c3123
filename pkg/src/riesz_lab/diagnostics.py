"""Separation, covering radius, empirical regularity and log-log exponent fits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from . import _accel
from .energy import Configuration, _points
from .geometry import CompactSet

# Acceptance windows, kept in one place.
WINDOWS = {
    "slope_halfwidth": 0.15,          # separation / covering exponents vs -1/d
    "regularity_halfwidth": 0.2,      # empirical-measure slopes
    "continuous_regularity_halfwidth": 0.1,
    "floor_ratio": 0.2,               # min_j m_j >= ratio * median_j m_j
    "greedy_j_min": 32,
    "min_count": 5,                   # points per ball for a usable radius
}


def expected_slope_window(d: float, halfwidth: float | None = None) -> tuple[float, float]:
    h = WINDOWS["slope_halfwidth"] if halfwidth is None else halfwidth
    return (-1.0 / d - h, -1.0 / d + h)


# -- separation -----------------------------------------------------------------

def separation(omega, within=None, method: str = "tree") -> float:
    """Minimum pairwise distance.

    ``within`` (boolean mask) restricts the first point of each pair to a
    subset, i.e. min over masked j of the distance to every other point.
    ``method`` is ``"tree"`` (kd-tree) or ``"brute"`` (O(N^2) scan).
    """
    X = _points(omega)
    if len(X) < 2:
        raise ValueError("separation needs at least two points")
    if method == "brute":
        nn = np.empty(len(X))
        for j in range(len(X)):
            others = np.delete(X, j, axis=0)
            nn[j] = _accel.nearest_dist(X[j : j + 1], others)[0]
    elif method == "tree":
        d, _ = cKDTree(X).query(X, k=2)
        nn = d[:, 1]
    else:
        raise ValueError(f"unknown method {method!r}")
    if within is not None:
        within = np.asarray(within, dtype=bool)
        if not within.any():
            raise ValueError("empty subset")
        nn = nn[within]
    return float(nn.min())


def nearest_neighbor_distances(omega) -> np.ndarray:
    X = _points(omega)
    d, _ = cKDTree(X).query(X, k=2)
    return d[:, 1]


# -- covering radius --------------------------------------------------------------

class Covering(NamedTuple):
    raw: float
    refined: float
    point: np.ndarray


def _ascend_distance(A: CompactSet, tree, y, steps=200):
    """Local ascent of y -> dist(y, omega) on A, pushing y away from its nearest point."""
    f, _ = tree.query(y)
    h = 0.25 * f if f > 0 else 1e-3
    for _ in range(steps):
        if h < 1e-12 * A.diameter:
            break
        _, idx = tree.query(y, k=min(3, tree.n))
        idx = np.atleast_1d(idx)
        away = y - tree.data[idx[0]]
        nrm = np.linalg.norm(away)
        if nrm == 0.0:
            break
        direction = A.tangent_project(y, away / nrm)
        dn = np.linalg.norm(direction)
        if dn < 1e-14:
            break
        y_new = A.project(y + h * direction / dn)
        f_new, _ = tree.query(y_new)
        if f_new > f:
            y, f = y_new, f_new
            h *= 1.5
        else:
            h *= 0.5
    return y, float(f)


def covering_radius(omega: Configuration, probe_budget: int = 100_000, seed=0, n_starts: int = 8) -> Covering:
    """max over A of the distance to the nearest configuration point.

    The raw value is the maximum over ``probe_budget`` uniform probes; the
    refined value follows local ascent from the best probes.  Both are lower
    bounds on the true covering radius.
    """
    if probe_budget < 1000:
        raise ValueError("probe_budget must be >= 1000")
    A = omega.set
    X = omega.points
    tree = cKDTree(X)
    P = A.sample(probe_budget, seed)
    d, _ = tree.query(P)
    order = np.argsort(-d, kind="stable")
    raw = float(d[order[0]])
    best_y, best = P[order[0]], raw
    for i in order[:n_starts]:
        y, f = _ascend_distance(A, tree, P[i])
        if f > best:
            best_y, best = y, f
    return Covering(raw, best, best_y)


# -- exponent fits -----------------------------------------------------------------

class Fit(NamedTuple):
    slope: float
    stderr: float
    residual: float
    intercept: float
    n_min: float
    n_max: float


def fit_exponent(pairs, min_pairs: int = 4) -> Fit:
    """Least-squares slope of log(value) against log(N).

    ``residual`` is the root-mean-square residual of the log-log fit.
    """
    arr = np.asarray(list(pairs), dtype=float)
    if arr.ndim != 2 or len(arr) < min_pairs:
        raise ValueError(f"need at least {min_pairs} (N, value) pairs")
    N, v = arr[:, 0], arr[:, 1]
    if np.any(v <= 0) or np.any(N <= 0):
        raise ValueError("values and N must be positive for a log-log fit")
    x, y = np.log(N), np.log(v)
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    slope = float(((x - xm) * (y - ym)).sum() / sxx)
    intercept = float(ym - slope * xm)
    res = y - (intercept + slope * x)
    ssr = float((res**2).sum())
    dof = len(x) - 2
    stderr = math.sqrt(ssr / dof / sxx) if dof > 0 else 0.0
    return Fit(slope, stderr, math.sqrt(ssr / len(x)), intercept, float(N.min()), float(N.max()))


# -- regularity of empirical measures ---------------------------------------------

class Regularity(NamedTuple):
    slope: float
    counts: np.ndarray
    radii: np.ndarray
    used: np.ndarray


def default_radii(A: CompactSet, N: int, levels: int = 12) -> np.ndarray:
    """Geometric radii 0.2 diam(A) 2^-k, k = 0..levels-1 (increasing)."""
    r_max = 0.2 * A.diameter
    return np.sort(r_max * 2.0 ** -np.arange(levels))


def empirical_regularity(omega, x, radii=None, min_count: int | None = None) -> Regularity:
    """Fractions |omega ∩ B(x, r)| / N and their log-log slope in r.

    Radii with fewer than ``min_count`` points are left out of the fit.
    """
    X = _points(omega)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if radii is None:
        if not isinstance(omega, Configuration):
            raise ValueError("radii required for bare point arrays")
        radii = default_radii(omega.set, len(X))
    radii = np.asarray(radii, dtype=float)
    if np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be increasing")
    mc = WINDOWS["min_count"] if min_count is None else min_count
    dist = np.linalg.norm(X - x[None, :], axis=1)
    counts = np.array([(dist < r).sum() for r in radii])
    used = counts >= mc
    if used.sum() < 3:
        raise ValueError("insufficient resolution: fewer than 3 radii with enough points")
    frac = counts / len(X)
    fit = fit_exponent(zip(radii[used], frac[used]), min_pairs=3)
    return Regularity(fit.slope, frac, radii, used)


def measure_regularity(measure_fn, radii) -> Fit:
    """log-log slope of r -> measure_fn(r)."""
    return fit_exponent((r, measure_fn(r)) for r in radii)


# -- greedy separation floor ----------------------------------------------------------

class Floor(NamedTuple):
    minimum: float
    median: float
    j: np.ndarray
    series: np.ndarray
    distances: np.ndarray


def greedy_separation_floor(omega, d: float, j_min: int | None = None) -> Floor:
    """m_j = min_{i<j} |a_i - a_j| * j^(1/d) over j in [j_min, N] (1-based j)."""
    X = _points(omega)
    j_min = WINDOWS["greedy_j_min"] if j_min is None else j_min
    if j_min < 8:
        raise ValueError("j_min must be >= 8")
    if len(X) < j_min:
        raise ValueError("configuration shorter than j_min")
    dists = _accel.prefix_min_dist(X)[j_min - 1 :]
    j = np.arange(j_min, len(X) + 1)
    m = dists * j ** (1.0 / d)
    return Floor(float(m.min()), float(np.median(m)), j, m, dists)


# -- report ----------------------------------------------------------------------------

@dataclass
class Verdict:
    name: str
    value: float
    window: tuple
    passed: bool = field(init=False)

    def __post_init__(self):
        lo, hi = self.window
        self.passed = bool(lo <= self.value <= hi)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.value:.6g} in [{self.window[0]:.6g}, {self.window[1]:.6g}]"

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "window": list(self.window), "passed": self.passed}


@dataclass
class ScalingReport:
    """Per-N rows, fitted slopes and verdicts for one experiment."""

    meta: dict
    rows: list = field(default_factory=list)
    fits: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)

    def add_row(self, **row):
        if self.rows and row["N"] <= self.rows[-1]["N"]:
            raise ValueError("rows must be added in strictly increasing N")
        self.rows.append(row)

    def add_fit(self, name: str, fit: Fit):
        self.fits.append({"name": name, "slope": fit.slope, "stderr": fit.stderr, "residual": fit.residual,
                          "intercept": fit.intercept, "N_range": [fit.n_min, fit.n_max]})

    def check(self, name: str, value: float, window) -> Verdict:
        v = Verdict(name, float(value), tuple(float(w) for w in window))
        self.verdicts.append(v)
        return v

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"meta": self.meta, "rows": self.rows, "fits": self.fits,
                "verdicts": [v.to_dict() for v in self.verdicts]}

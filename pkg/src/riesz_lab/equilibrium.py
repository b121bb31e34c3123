"""Closed-form equilibrium measures and quantities derived from them.

Supported forms:

``ball``     density M (1 - |x|^2)^((s - l)/2) on the closed unit l-ball,
             s in (l - 2, l); the interval [a, b] is handled as the affine
             image of the 1-ball.
``uniform``  normalized arclength/area on the unit circle or S^2.
``arcsine``  1 / (pi sqrt(1 - x^2)) on [-1, 1] for the log kernel (a
             classical result, used here as an oracle for log tests).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate, special

from .energy import Kernel
from .geometry import CompactSet

QUAD_TOL = 1e-11


@dataclass(frozen=True)
class EquilibriumMeasure:
    set: CompactSet
    kernel: Kernel
    form: str
    M: float

    @property
    def ell(self) -> int:
        """Dimension of the supporting ball/sphere."""
        return self.set.intrinsic_dim

    @property
    def beta(self) -> float:
        """Exponent (s - l)/2 of the ball density."""
        return (self.kernel.exponent - self.ell) / 2.0


def ball_constant(ell: int, s: float) -> float:
    return math.gamma(1 + s / 2) / (math.pi ** (ell / 2) * math.gamma(1 + (s - ell) / 2))


def equilibrium_measure(A: CompactSet, k: Kernel) -> EquilibriumMeasure:
    """The s-equilibrium measure of A when a closed form is available."""
    s = k.exponent
    if A.kind == "sphere":
        if not k.is_log and s >= A.dim:
            raise ValueError(f"s={s} >= d={A.dim}: capacity zero, no equilibrium measure")
        return EquilibriumMeasure(A, k, "uniform", 1.0 / A.measure())
    if A.kind == "interval" and k.is_log:
        return EquilibriumMeasure(A, k, "arcsine", 1.0 / math.pi)
    if A.kind in ("interval", "ball"):
        ell = A.intrinsic_dim
        if k.is_log or not (ell - 2 < s < ell):
            raise ValueError(f"closed form needs s in ({ell - 2}, {ell}) for the {ell}-ball")
        return EquilibriumMeasure(A, k, "ball", ball_constant(ell, s))
    raise ValueError(f"no closed-form equilibrium measure for {A.name}")


def _to_unit(em, x):
    """Map interval coordinates to [-1, 1]; identity elsewhere."""
    A = em.set
    x = np.asarray(x, dtype=float)
    if A.kind == "interval":
        return (2.0 * x - (A.a + A.b)) / (A.b - A.a), 2.0 / (A.b - A.a)
    return x, 1.0


def density(em: EquilibriumMeasure, x) -> float:
    """Density w.r.t. Lebesgue/arclength/area measure; +inf on the ball boundary when s < l."""
    u, jac = _to_unit(em, x)
    u = np.atleast_1d(u)
    if em.form == "uniform":
        return em.M
    r2 = float(u @ u)
    if r2 > 1.0:
        return 0.0
    if em.form == "arcsine":
        return math.inf if r2 == 1.0 else jac * em.M / math.sqrt(1.0 - r2)
    if r2 == 1.0:
        return math.inf if em.beta < 0 else 0.0
    return jac * em.M * (1.0 - r2) ** em.beta


# -- measure of balls -------------------------------------------------------

def _cdf_1d(em, x):
    """mu((-1, x]) on the unit interval."""
    x = min(max(x, -1.0), 1.0)
    if em.form == "arcsine":
        return 0.5 + math.asin(x) / math.pi
    half = 0.5 * special.betainc(0.5, em.beta + 1.0, x * x)
    return 0.5 + math.copysign(half, x)


def _shell_fraction(ell, rho, a, r):
    """Normalized measure of {|y| = rho, |y - c| < r} for |c| = a."""
    if rho == 0.0 or a == 0.0:
        return 1.0 if rho < r else 0.0
    # 1 - kappa with kappa the cosine of the cap half-angle, in factored form
    # to avoid cancellation for small r
    g = rho - a
    omk = (r - g) * (r + g) / (2.0 * rho * a)
    omk = min(2.0, max(0.0, omk))
    if ell == 2:
        return 2.0 * math.asin(math.sqrt(0.5 * omk)) / math.pi
    return 0.5 * omk


def measure_of_ball(em: EquilibriumMeasure, center, r: float) -> float:
    """mu(B(center, r)) for the open Euclidean ball, to ~1e-10 absolute.

    Rotational symmetry reduces every case to a 1-D radial integral: the
    angular part of a shell |y| = rho inside B(center, r) is closed form.
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    c, jac = _to_unit(em, center)
    c = np.atleast_1d(c)
    r = r * jac
    if em.form in ("arcsine",) or em.set.kind == "interval":
        x0 = float(c[0])
        return max(0.0, _cdf_1d(em, x0 + r) - _cdf_1d(em, x0 - r))
    a = float(np.linalg.norm(c))
    ell = em.ell
    if em.form == "uniform":
        # unit sphere S^{ell}, ell = 1 or 2: single shell at rho = 1
        return _shell_fraction(ell + 1, 1.0, a, r)
    beta = em.beta
    if a == 0.0:
        return float(special.betainc(ell / 2.0, beta + 1.0, min(r, 1.0) ** 2))
    # radial mass element: l * B(l/2, beta+1)^-1-normalized.  Substitute
    # 1 - rho^2 = w^(1/(beta+1)) to remove the boundary singularity.
    q = 1.0 / (beta + 1.0)
    norm = 1.0 / special.beta(ell / 2.0, beta + 1.0)

    def integrand(w):
        om = w ** q  # 1 - rho^2
        rho2 = 1.0 - om
        if rho2 <= 0.0:
            return 0.0
        rho = math.sqrt(rho2)
        # d(rho^2) = -q w^(q-1) dw ; (1 - rho^2)^beta = w^(q beta); q(beta+1) = 1
        return norm * rho2 ** (ell / 2.0 - 1.0) * q * _shell_fraction(ell, rho, a, r)

    lo, hi = abs(a - r), a + r
    brk = sorted({(1.0 - b * b) ** (beta + 1.0) for b in (lo, hi) if 0.0 < b < 1.0})
    val, _ = integrate.quad(integrand, 0.0, 1.0, points=brk or None, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=400)
    return min(1.0, max(0.0, val))


# -- sampling -------------------------------------------------------------------

def sample_measure(em: EquilibriumMeasure, n: int, seed=None) -> np.ndarray:
    """n i.i.d. draws from the equilibrium measure, shape (n, p)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    A = em.set
    if em.form == "uniform":
        return A.sample(n, rng)
    if em.form == "arcsine":
        u = np.cos(np.pi * rng.random(n))
    else:
        # rho^2 ~ Beta(l/2, beta + 1) is exactly the radial law of the ball density
        rho = np.sqrt(rng.beta(em.ell / 2.0, em.beta + 1.0, n))
        if A.kind == "interval":
            u = rho * np.where(rng.random(n) < 0.5, -1.0, 1.0)
        else:
            g = rng.standard_normal((n, em.ell))
            g /= np.linalg.norm(g, axis=1)[:, None]
            return g * rho[:, None]
    if A.kind == "interval":
        u = 0.5 * (A.a + A.b) + 0.5 * (A.b - A.a) * u
    return u[:, None]


# -- potentials ---------------------------------------------------------------

class PotentialEstimate(NamedTuple):
    estimate: float
    stderr: float
    near: float


def equilibrium_potential(em: EquilibriumMeasure, y, n_mc: int = 100_000, seed=0, r0: float = 0.05) -> PotentialEstimate:
    """Estimate U(y) = int k(|y - z|) dmu(z).

    The ball B(y, r0) is integrated deterministically: with F(t) = mu(B(y, t)),
    int_{|z-y|<r0} k dmu = k(r0) F(r0) - int_0^r0 k'(t) F(t) dt.
    The remainder is plain Monte Carlo over draws from mu.
    """
    if n_mc < 1000:
        raise ValueError("n_mc must be >= 1000")
    k = em.kernel
    d = em.set.intrinsic_dim
    if not k.is_log and k.s >= d:
        raise ValueError("potential diverges on A for s >= d")
    y = np.atleast_1d(np.asarray(y, dtype=float))
    F0 = measure_of_ball(em, y, r0)
    if F0 > 0.0:
        # t = r0 u^m flattens the t^(d-s-1) behaviour of k'(t) F(t) near 0
        m = 2.0 / (d - k.exponent)

        def f(u):
            t = r0 * u ** m
            if t == 0.0:
                return 0.0
            return -float(k.derivative(t)) * measure_of_ball(em, y, t) * r0 * m * u ** (m - 1.0)

        rad = float(np.linalg.norm(_to_unit(em, y)[0])) if em.form != "uniform" else 1.0
        kinks = [(abs(1.0 - rad) / r0) ** (1.0 / m)] if em.form != "uniform" else []
        kinks = [u for u in kinks if 0.0 < u < 1.0]
        tail, _ = integrate.quad(f, 0.0, 1.0, points=kinks or None, epsabs=1e-9, epsrel=1e-9, limit=200)
        near = float(k(r0)) * F0 + tail
    else:
        near = 0.0
    Z = sample_measure(em, n_mc, seed)
    dist = np.linalg.norm(Z - y[None, :], axis=1)
    far = dist >= r0
    vals = np.zeros(n_mc)
    vals[far] = k(dist[far])
    return PotentialEstimate(near + float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_mc)), near)


def wiener_constant_uniform_circle(k: Kernel) -> float:
    """I_k[uniform measure on the unit circle] by deterministic quadrature."""
    # |e^{it} - 1| = 2 sin(t/2) = t g(t) with g smooth; the t-singularity
    # goes into the quadrature weight
    def g(t):
        return 2.0 * math.sin(0.5 * t) / t if t > 0.0 else 1.0

    if k.is_log:
        sing, _ = integrate.quad(lambda t: -1.0, 0.0, math.pi, weight="alg-loga", wvar=(0.0, 0.0))
        smooth, _ = integrate.quad(lambda t: -math.log(g(t)), 0.0, math.pi, epsabs=1e-14, epsrel=1e-13)
        val = sing + smooth
    else:
        val, _ = integrate.quad(lambda t: g(t) ** -k.s, 0.0, math.pi, weight="alg", wvar=(-k.s, 0.0),
                                epsabs=1e-14, epsrel=1e-13)
    return val / math.pi


def wiener_estimate(k: Kernel, A: CompactSet, N: int, seed: int = 0, **plan_kwargs) -> float:
    """E(w_N) / (N (N - 1)) for a near-minimizer w_N."""
    from .minimizer import MinimizePlan, minimize_energy

    if not k.is_log and k.s >= A.intrinsic_dim:
        raise ValueError("infinite Wiener constant (s >= d: zero s-capacity)")
    res = minimize_energy(MinimizePlan(k, A, N, **plan_kwargs), seed)
    return res.energy / (N * (N - 1))

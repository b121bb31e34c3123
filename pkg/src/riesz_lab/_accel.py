"""Pairwise kernels behind the energy, potential and distance routines.

Every kernel exists twice: a numba ``@njit`` version and a plain numpy
version.  The public names at the bottom of the module are bound to one of
the two at import time.  Set ``RIESZ_LAB_NUMBA=0`` to force the numpy path
(numba missing has the same effect).  ``RIESZ_LAB_WORKERS`` caps the number
of numba threads.

Kernels take the Riesz exponent as ``s`` and a flag ``is_log``; the log
kernel ignores ``s``.  Point sets are C-contiguous float64 arrays of shape
``(n, p)``.
"""
import math
import os

import numpy as np

# numba otherwise probes TBB first and warns when the system TBB is too old
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("RIESZ_LAB_NUMBA", "1").strip() not in ("0", "false", "no")

if HAVE_NUMBA and os.environ.get("RIESZ_LAB_WORKERS"):
    numba.set_num_threads(max(1, min(int(os.environ["RIESZ_LAB_WORKERS"]), numba.config.NUMBA_NUM_THREADS)))

_BLOCK = 256


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _kernel_np(d, s, is_log):
    with np.errstate(divide="ignore"):
        if is_log:
            return -np.log(d)
        return d ** (-s)


def pair_sum_np(X, s, is_log):
    """Sum of the kernel over unordered pairs i < j (compensated across rows)."""
    n = X.shape[0]
    rows = []
    for lo in range(0, n - 1, _BLOCK):
        hi = min(lo + _BLOCK, n - 1)
        diff = X[lo:hi, None, :] - X[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        mask = np.arange(n)[None, :] > np.arange(lo, hi)[:, None]
        vals = np.where(mask, _kernel_np(np.where(mask, d, 1.0), s, is_log), 0.0)
        rows.extend(vals.sum(axis=1).tolist())
    return math.fsum(rows)


def energy_gradient_np(X, s, is_log):
    """Gradient of the ordered-pair energy with respect to every point."""
    n, p = X.shape
    G = np.empty_like(X)
    for lo in range(0, n, _BLOCK):
        hi = min(lo + _BLOCK, n)
        diff = X[lo:hi, None, :] - X[None, :, :]
        r2 = np.einsum("ijk,ijk->ij", diff, diff)
        idx = np.arange(lo, hi)
        r2[idx - lo, idx] = np.inf
        if is_log:
            w = 1.0 / r2
        else:
            w = s * r2 ** (-(s + 2.0) / 2.0)
        G[lo:hi] = -2.0 * np.einsum("ij,ijk->ik", w, diff)
    return G


def energy_and_gradient_np(X, s, is_log):
    """(sum over i<j of the kernel, gradient of the ordered-pair energy)."""
    return pair_sum_np(X, s, is_log), energy_gradient_np(X, s, is_log)


def potentials_np(Y, X, s, is_log):
    """Potential of the configuration X at every row of Y; +inf where occupied."""
    out = np.empty(Y.shape[0])
    for lo in range(0, Y.shape[0], _BLOCK):
        hi = min(lo + _BLOCK, Y.shape[0])
        diff = Y[lo:hi, None, :] - X[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        v = _kernel_np(d, s, is_log)
        v[d == 0.0] = np.inf
        out[lo:hi] = v.sum(axis=1)
    return out


def potential_gradient_np(y, X, s, is_log):
    diff = y[None, :] - X
    r2 = np.einsum("ij,ij->i", diff, diff)
    if is_log:
        w = 1.0 / r2
    else:
        w = s * r2 ** (-(s + 2.0) / 2.0)
    return -(w[:, None] * diff).sum(axis=0)


def nearest_dist_np(Y, X):
    out = np.empty(Y.shape[0])
    for lo in range(0, Y.shape[0], _BLOCK):
        hi = min(lo + _BLOCK, Y.shape[0])
        diff = Y[lo:hi, None, :] - X[None, :, :]
        out[lo:hi] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff).min(axis=1))
    return out


def prefix_min_dist_np(X):
    """out[j] = min_{i<j} |X[i] - X[j]|; out[0] = inf."""
    n = X.shape[0]
    out = np.full(n, np.inf)
    for j in range(1, n):
        diff = X[:j] - X[j]
        out[j] = math.sqrt(np.einsum("ij,ij->i", diff, diff).min())
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _kernel_nb(r2, s, is_log):
        if is_log:
            return -0.5 * math.log(r2)
        m = 2.0 * s
        if m == math.floor(m) and m <= 16.0:
            # s = m/2: r^-s = (r^(1/2))^-m, avoiding pow
            q = math.sqrt(math.sqrt(r2))
            qm = 1.0
            for _ in range(int(m)):
                qm *= q
            return 1.0 / qm
        return r2 ** (-0.5 * s)

    @njit(cache=True, parallel=True)
    def pair_sum_nb(X, s, is_log):
        n, p = X.shape
        rows = np.zeros(n)
        for i in prange(n):
            acc = 0.0
            comp = 0.0
            for j in range(i + 1, n):
                r2 = 0.0
                for k in range(p):
                    t = X[i, k] - X[j, k]
                    r2 += t * t
                if r2 == 0.0:
                    v = np.inf
                else:
                    v = _kernel_nb(r2, s, is_log)
                # Neumaier summation
                tot = acc + v
                if abs(acc) >= abs(v):
                    comp += (acc - tot) + v
                else:
                    comp += (v - tot) + acc
                acc = tot
            rows[i] = acc + comp
        acc = 0.0
        comp = 0.0
        for i in range(n):
            v = rows[i]
            tot = acc + v
            if abs(acc) >= abs(v):
                comp += (acc - tot) + v
            else:
                comp += (v - tot) + acc
            acc = tot
        return acc + comp

    @njit(cache=True)
    def energy_and_gradient_nb(X, s, is_log):
        # single pass over i < j: one kernel evaluation per pair
        n, p = X.shape
        G = np.zeros((n, p))
        diff = np.empty(p)
        acc = 0.0
        comp = 0.0
        for i in range(n):
            racc = 0.0
            rcomp = 0.0
            for j in range(i + 1, n):
                r2 = 0.0
                for k in range(p):
                    diff[k] = X[i, k] - X[j, k]
                    r2 += diff[k] * diff[k]
                if r2 == 0.0:
                    v = np.inf
                    w = 0.0
                elif is_log:
                    v = -0.5 * math.log(r2)
                    w = 1.0 / r2
                else:
                    v = _kernel_nb(r2, s, is_log)
                    w = s * v / r2
                tot = racc + v
                if abs(racc) >= abs(v):
                    rcomp += (racc - tot) + v
                else:
                    rcomp += (v - tot) + racc
                racc = tot
                for k in range(p):
                    f = 2.0 * w * diff[k]
                    G[i, k] -= f
                    G[j, k] += f
            v = racc + rcomp
            tot = acc + v
            if abs(acc) >= abs(v):
                comp += (acc - tot) + v
            else:
                comp += (v - tot) + acc
            acc = tot
        return acc + comp, G

    @njit(cache=True)
    def energy_gradient_nb(X, s, is_log):
        return energy_and_gradient_nb(X, s, is_log)[1]

    @njit(cache=True, parallel=True)
    def potentials_nb(Y, X, s, is_log):
        m, p = Y.shape
        n = X.shape[0]
        out = np.empty(m)
        for a in prange(m):
            acc = 0.0
            for j in range(n):
                r2 = 0.0
                for k in range(p):
                    t = Y[a, k] - X[j, k]
                    r2 += t * t
                if r2 == 0.0:
                    acc = np.inf
                    break
                acc += _kernel_nb(r2, s, is_log)
            out[a] = acc
        return out

    @njit(cache=True)
    def potential_gradient_nb(y, X, s, is_log):
        n, p = X.shape
        g = np.zeros(p)
        for j in range(n):
            r2 = 0.0
            for k in range(p):
                t = y[k] - X[j, k]
                r2 += t * t
            if is_log:
                w = 1.0 / r2
            else:
                w = s * _kernel_nb(r2, s, is_log) / r2
            for k in range(p):
                g[k] -= w * (y[k] - X[j, k])
        return g

    @njit(cache=True, parallel=True)
    def nearest_dist_nb(Y, X):
        m, p = Y.shape
        n = X.shape[0]
        out = np.empty(m)
        for a in prange(m):
            best = np.inf
            for j in range(n):
                r2 = 0.0
                for k in range(p):
                    t = Y[a, k] - X[j, k]
                    r2 += t * t
                if r2 < best:
                    best = r2
            out[a] = math.sqrt(best)
        return out

    @njit(cache=True, parallel=True)
    def prefix_min_dist_nb(X):
        n, p = X.shape
        out = np.empty(n)
        out[0] = np.inf
        for j in prange(1, n):
            best = np.inf
            for i in range(j):
                r2 = 0.0
                for k in range(p):
                    t = X[i, k] - X[j, k]
                    r2 += t * t
                if r2 < best:
                    best = r2
            out[j] = math.sqrt(best)
        return out


if USE_NUMBA:
    pair_sum = pair_sum_nb
    energy_gradient = energy_gradient_nb
    energy_and_gradient = energy_and_gradient_nb
    potentials = potentials_nb
    potential_gradient = potential_gradient_nb
    nearest_dist = nearest_dist_nb
    prefix_min_dist = prefix_min_dist_nb
else:
    pair_sum = pair_sum_np
    energy_gradient = energy_gradient_np
    energy_and_gradient = energy_and_gradient_np
    potentials = potentials_np
    potential_gradient = potential_gradient_np
    nearest_dist = nearest_dist_np
    prefix_min_dist = prefix_min_dist_np

BACKEND = "numba" if USE_NUMBA else "numpy"

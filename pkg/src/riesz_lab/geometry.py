"""Compact sets in Euclidean space: projection, sampling, tangent spaces.

Supported sets are the interval ``[a, b]``, the unit circle and unit
2-sphere, the closed unit disk and unit 3-ball, and the surface of a torus
of revolution with radii ``(R, r)``.  All routines accept either a single
point of shape ``(p,)`` or an array of points of shape ``(n, p)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

KINDS = ("interval", "sphere", "ball", "torus")

# Direction used when projection onto a sphere/circle is requested at its center.
_FALLBACK = {
    1: np.array([1.0]),
    2: np.array([0.8, 0.6]),
    3: np.array([2.0, 1.0, 2.0]) / 3.0,
}


def _unit_rows(X):
    """Row norms and unit rows, rescaled first so tiny rows do not underflow."""
    m = np.max(np.abs(X), axis=1)
    safe = np.where(m > 0.0, m, 1.0)
    Z = X / safe[:, None]
    zn = np.linalg.norm(Z, axis=1)
    U = Z / np.where(zn > 0.0, zn, 1.0)[:, None]
    return U, m * zn


@dataclass(frozen=True)
class CompactSet:
    """A compact set A in R^p.

    ``dim`` is the intrinsic dimension for spheres (1 = circle, 2 = S^2)
    and the ambient dimension for balls (2 = disk, 3 = ball).  ``a, b``
    apply to intervals, ``R, r`` to the torus.
    """

    kind: str
    dim: int = 1
    a: float = -1.0
    b: float = 1.0
    R: float = 2.0
    r: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}")
        if self.kind == "interval":
            if not self.a < self.b:
                raise ValueError("interval requires a < b")
            object.__setattr__(self, "dim", 1)
        elif self.kind == "sphere" and self.dim not in (1, 2):
            raise ValueError("sphere dim must be 1 (circle) or 2")
        elif self.kind == "ball" and self.dim not in (2, 3):
            raise ValueError("ball dim must be 2 (disk) or 3")
        elif self.kind == "torus":
            if not 0 < self.r < self.R:
                raise ValueError("torus requires 0 < r < R")
            object.__setattr__(self, "dim", 2)

    # -- metadata -----------------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        if self.kind == "sphere":
            return self.dim + 1
        if self.kind == "torus":
            return 3
        return self.dim

    @property
    def intrinsic_dim(self) -> int:
        return self.dim

    @property
    def diameter(self) -> float:
        if self.kind == "interval":
            return self.b - self.a
        if self.kind == "torus":
            return 2.0 * (self.R + self.r)
        return 2.0

    @property
    def is_manifold(self) -> bool:
        """True for boundaryless sets (sphere, circle, torus)."""
        return self.kind in ("sphere", "torus")

    @property
    def name(self) -> str:
        if self.kind == "sphere":
            return "circle" if self.dim == 1 else "sphere2"
        if self.kind == "ball":
            return "disk" if self.dim == 2 else "ball3"
        return self.kind

    def canonical_point(self) -> np.ndarray:
        """Fixed reproducible point of A (right endpoint / (1,0,..) / outer equator)."""
        if self.kind == "interval":
            return np.array([self.b])
        if self.kind == "torus":
            return np.array([self.R + self.r, 0.0, 0.0])
        e = np.zeros(self.ambient_dim)
        e[0] = 1.0
        return e

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        if self.kind == "interval":
            return {"kind": "interval", "a": self.a, "b": self.b}
        if self.kind == "torus":
            return {"kind": "torus", "R": self.R, "r": self.r}
        return {"kind": self.kind, "dim": self.dim}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CompactSet":
        d = dict(d)
        kind = d.pop("kind", None)
        if kind == "circle":
            return cls("sphere", 1)
        if kind == "disk":
            return cls("ball", 2)
        allowed = {"dim", "a", "b", "R", "r"}
        unknown = set(d) - allowed
        if unknown:
            raise ValueError(f"unknown set fields {sorted(unknown)}")
        return cls(kind, **d)

    @classmethod
    def from_name(cls, name: str) -> "CompactSet":
        """Parse a short CLI name (``sphere2``, ``circle``, ``disk``, ...) or a JSON object."""
        name = name.strip()
        if name.startswith("{"):
            return cls.from_dict(json.loads(name))
        try:
            return NAMED_SETS[name]
        except KeyError:
            raise ValueError(f"unknown set {name!r}; choose from {sorted(NAMED_SETS)}") from None

    # -- geometry -----------------------------------------------------------

    def residual(self, x) -> np.ndarray | float:
        """Distance-like membership residual; 0 on A."""
        X = np.asarray(x, dtype=float)
        if self.kind == "interval":
            v = X[..., 0]
            res = np.maximum(0.0, np.maximum(self.a - v, v - self.b))
        elif self.kind == "sphere":
            res = np.abs(np.linalg.norm(X, axis=-1) - 1.0)
        elif self.kind == "ball":
            res = np.maximum(0.0, np.linalg.norm(X, axis=-1) - 1.0)
        else:
            rho = np.hypot(X[..., 0], X[..., 1])
            res = np.abs(np.hypot(rho - self.R, X[..., 2]) - self.r)
        return res if X.ndim > 1 else float(res)

    def project(self, x) -> np.ndarray:
        """Nearest point of A (Euclidean).  Degenerate centers map along a fixed direction."""
        X = np.array(x, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[-1] != self.ambient_dim:
            raise ValueError(f"expected points in R^{self.ambient_dim}, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("cannot project non-finite points")
        if self.kind == "interval":
            out = np.clip(X, self.a, self.b)
        elif self.kind in ("sphere", "ball"):
            U, nrm = _unit_rows(X)
            zero = nrm == 0.0
            if self.kind == "sphere":
                out = U
                out[zero] = _FALLBACK[self.ambient_dim]
            else:
                out = X.copy()
                far = nrm > 1.0
                out[far] = U[far]
        else:
            out = self._project_torus(X)
        return out[0] if single else out

    def _project_torus(self, X):
        rho = np.hypot(X[:, 0], X[:, 1])
        u = np.empty((X.shape[0], 2))
        on_axis = rho == 0.0
        u[~on_axis] = X[~on_axis, :2] / rho[~on_axis, None]
        u[on_axis] = (1.0, 0.0)
        core = np.column_stack([self.R * u, np.zeros(X.shape[0])])
        v, vn = _unit_rows(X - core)
        flat = vn == 0.0
        v[flat] = np.column_stack([u[flat], np.zeros(flat.sum())])
        return core + self.r * v

    def normals(self, X) -> np.ndarray:
        """Unit outward normals at points of a manifold set (rows)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.kind == "sphere":
            return X / np.linalg.norm(X, axis=1)[:, None]
        if self.kind == "torus":
            rho = np.hypot(X[:, 0], X[:, 1])
            rho = np.where(rho == 0.0, 1.0, rho)
            core = np.column_stack([self.R * X[:, 0] / rho, self.R * X[:, 1] / rho, np.zeros(len(X))])
            v = X - core
            return v / np.linalg.norm(v, axis=1)[:, None]
        raise ValueError(f"{self.name} is not a boundaryless manifold")

    def outward_normals(self, X):
        """For sets with boundary: (normals, on_boundary mask).  Normals are only meaningful on the mask."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.kind == "interval":
            v = X[:, 0]
            n = np.where(v >= self.b, 1.0, -1.0)[:, None]
            return n, (v <= self.a) | (v >= self.b)
        if self.kind == "ball":
            nrm = np.linalg.norm(X, axis=1)
            safe = np.where(nrm == 0.0, 1.0, nrm)
            return X / safe[:, None], nrm >= 1.0 - 1e-12
        raise ValueError(f"{self.name} has no boundary")

    def tangent_project(self, X, V) -> np.ndarray:
        """Remove the normal component of vectors V at points X (manifolds only; identity otherwise)."""
        V = np.asarray(V, dtype=float)
        if not self.is_manifold:
            return V.copy()
        n = self.normals(X)
        V2 = np.atleast_2d(V)
        out = V2 - np.einsum("ij,ij->i", V2, n)[:, None] * n
        return out if V.ndim > 1 else out[0]

    def tangent_basis(self, x) -> np.ndarray:
        """Orthonormal tangent vectors at x as rows.

        For the interval, disk and ball the full ambient basis is returned
        (also at boundary points; the projection handles the constraint).
        """
        x = np.asarray(x, dtype=float)
        p = self.ambient_dim
        if not self.is_manifold:
            return np.eye(p)
        if self.kind == "torus":
            phi = math.atan2(x[1], x[0])
            n = self.normals(x)[0]
            e_phi = np.array([-math.sin(phi), math.cos(phi), 0.0])
            e_theta = np.cross(n, e_phi)
            return np.array([e_phi, e_theta / np.linalg.norm(e_theta)])
        n = x / np.linalg.norm(x)
        if p == 2:
            return np.array([[-n[1], n[0]]])
        # Gram-Schmidt against the axis least aligned with n
        e = np.zeros(3)
        e[np.argmin(np.abs(n))] = 1.0
        t1 = e - np.dot(e, n) * n
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(n, t1)
        return np.array([t1, t2])

    def sample(self, n: int, seed=None) -> np.ndarray:
        """n points distributed uniformly w.r.t. length/area/volume on A."""
        if n < 1:
            raise ValueError("n must be >= 1")
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        p = self.ambient_dim
        if self.kind == "interval":
            return rng.uniform(self.a, self.b, size=(n, 1))
        if self.kind == "sphere":
            g = rng.standard_normal((n, p))
            return g / np.linalg.norm(g, axis=1)[:, None]
        if self.kind == "ball":
            g = rng.standard_normal((n, p))
            g /= np.linalg.norm(g, axis=1)[:, None]
            return g * rng.random(n)[:, None] ** (1.0 / p)
        return self._sample_torus(n, rng)

    def _sample_torus(self, n, rng):
        # area element (R + r cos theta) dphi dtheta; rejection on theta
        thetas = np.empty(0)
        while thetas.size < n:
            m = 2 * (n - thetas.size) + 16
            th = rng.uniform(0.0, 2 * np.pi, m)
            keep = rng.random(m) * (self.R + self.r) < self.R + self.r * np.cos(th)
            thetas = np.concatenate([thetas, th[keep]])
        th = thetas[:n]
        phi = rng.uniform(0.0, 2 * np.pi, n)
        w = self.R + self.r * np.cos(th)
        return np.column_stack([w * np.cos(phi), w * np.sin(phi), self.r * np.sin(th)])

    def measure(self) -> float:
        """Total length/area/volume of A."""
        if self.kind == "interval":
            return self.b - self.a
        if self.kind == "sphere":
            return 2 * np.pi if self.dim == 1 else 4 * np.pi
        if self.kind == "ball":
            return np.pi if self.dim == 2 else 4.0 * np.pi / 3.0
        return 4 * np.pi**2 * self.R * self.r


NAMED_SETS = {
    "interval": CompactSet("interval"),
    "circle": CompactSet("sphere", 1),
    "sphere1": CompactSet("sphere", 1),
    "sphere2": CompactSet("sphere", 2),
    "sphere": CompactSet("sphere", 2),
    "disk": CompactSet("ball", 2),
    "ball2": CompactSet("ball", 2),
    "ball3": CompactSet("ball", 3),
    "torus": CompactSet("torus"),
}

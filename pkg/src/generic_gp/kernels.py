"""Bounded positive-definite kernels.

All kernels satisfy ``K(x, x) <= 1``. RBF and Matern are normalised so that
``K(x, x) == 1``; the linear kernel only accepts points in the closed unit
ball and refuses anything outside it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

__all__ = [
    "DomainError",
    "KernelSpec",
    "rbf",
    "matern",
    "linear",
    "eval_kernel",
    "cross",
    "gram",
    "diag",
    "parse_kernel",
]

_MATERN_NUS = (0.5, 1.5, 2.5)
# slack on the unit-ball check for the linear kernel
_BALL_TOL = 1e-12


class DomainError(ValueError):
    """A point lies outside the domain on which a kernel is bounded by 1."""


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice plus hyperparameters.

    ``kind`` is one of ``"rbf"``, ``"matern"`` or ``"linear"``. ``nu`` is
    only meaningful for Matern and must be 1/2, 3/2 or 5/2.
    """

    kind: str
    lengthscale: float = 1.0
    nu: float | None = None

    def __post_init__(self):
        if self.kind not in ("rbf", "matern", "linear"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind != "linear" and not self.lengthscale > 0:
            raise ValueError(f"lengthscale must be positive, got {self.lengthscale}")
        if self.kind == "matern" and self.nu not in _MATERN_NUS:
            raise ValueError(f"Matern nu must be one of {_MATERN_NUS}, got {self.nu}")

    def __str__(self):
        if self.kind == "rbf":
            return f"rbf:{self.lengthscale:g}"
        if self.kind == "matern":
            return f"matern:{self.nu:g}:{self.lengthscale:g}"
        return "linear"


def rbf(lengthscale=1.0):
    return KernelSpec("rbf", float(lengthscale))


def matern(nu, lengthscale=1.0):
    return KernelSpec("matern", float(lengthscale), float(nu))


def linear():
    return KernelSpec("linear")


def _as_2d(points, name="points"):
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a point or a 2-d array of points")
    return arr


def _check_ball(arr):
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms > 1.0 + _BALL_TOL):
        raise DomainError(
            f"linear kernel requires ||x|| <= 1, got norm {norms.max():.6g}"
        )


def _radial(spec, r):
    s = r / spec.lengthscale
    if spec.kind == "rbf":
        return np.exp(-0.5 * s**2)
    if spec.nu == 0.5:
        return np.exp(-s)
    if spec.nu == 1.5:
        a = np.sqrt(3.0) * s
        return (1.0 + a) * np.exp(-a)
    a = np.sqrt(5.0) * s
    return (1.0 + a + a**2 / 3.0) * np.exp(-a)


def cross(spec: KernelSpec, A, B) -> np.ndarray:
    """Kernel matrix between two point sets, shape ``(len(A), len(B))``."""
    A = _as_2d(A, "A")
    B = _as_2d(B, "B")
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    if spec.kind == "linear":
        _check_ball(A)
        _check_ball(B)
        return A @ B.T
    return _radial(spec, cdist(A, B))


def eval_kernel(spec: KernelSpec, x, y) -> float:
    """``K(x, y)`` for two single points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if spec.kind == "linear":
        _check_ball(np.stack([x, y]))
        return float(x @ y)
    return float(_radial(spec, np.linalg.norm(x - y)))


def gram(spec: KernelSpec, points) -> np.ndarray:
    """Symmetric Gram matrix of ``points``; an empty list gives a 0x0 matrix."""
    if len(points) == 0:
        return np.zeros((0, 0))
    P = _as_2d(points)
    G = cross(spec, P, P)
    return 0.5 * (G + G.T)


def diag(spec: KernelSpec, points) -> np.ndarray:
    """``K(x, x)`` for every row of ``points``."""
    P = _as_2d(points)
    if spec.kind == "linear":
        _check_ball(P)
        return np.sum(P**2, axis=1)
    return np.ones(P.shape[0])


def parse_kernel(text: str) -> KernelSpec:
    """Parse ``"rbf:<ls>"``, ``"matern:<nu>:<ls>"`` or ``"linear"``."""
    parts = text.strip().lower().split(":")
    try:
        if parts[0] == "rbf" and len(parts) == 2:
            return rbf(float(parts[1]))
        if parts[0] == "matern" and len(parts) == 3:
            return matern(float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad kernel spec {text!r}: {exc}") from None
    if parts == ["linear"]:
        return linear()
    raise ValueError(f"bad kernel spec {text!r}")

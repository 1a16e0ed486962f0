"""Kernel ridge estimator with rho = 1, maintained incrementally.

The Hilbert-space quantities used by Generic-GP are represented through the
observed points only:

* estimator      f_hat(x) = k_t(x)^T (K_t + I)^{-1} y
* weighted norm  ||Vbar^{-1/2} K(., x)||^2 = K(x, x) - k_t(x)^T (K_t + I)^{-1} k_t(x)
* log det(Vbar_t) = log det(I_t + K_t)

``K_t + I = L L^T`` is extended one row per observation. When the state is
built with a fixed candidate set, it additionally tracks ``W = L^{-1} K_tc``
so that means, weighted norms and the posterior covariance over the
candidates are updated in O(t * n) per round instead of being recomputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .kernels import KernelSpec, cross, diag

__all__ = [
    "NumericalDegeneracyError",
    "ConfidenceParams",
    "PosteriorState",
    "g_scale",
]

PIVOT_FLOOR = 1e-10


class NumericalDegeneracyError(ArithmeticError):
    """A Cholesky pivot fell below the jitter floor."""


@dataclass(frozen=True)
class ConfidenceParams:
    """Noise scale ``R`` and RKHS-norm bound ``D`` used by the width function g."""

    R: float
    D: float

    def __post_init__(self):
        if not self.R >= 0:
            raise ValueError(f"R must be >= 0, got {self.R}")
        if not self.D > 0:
            raise ValueError(f"D must be > 0, got {self.D}")


def g_scale(params: ConfidenceParams, log_det: float) -> float:
    """Multiplier ``sqrt(2 R^2 log(2 sqrt(det Vbar))) + D`` evaluated in log space."""
    return math.sqrt(2.0 * params.R**2 * (math.log(2.0) + 0.5 * log_det)) + params.D


class PosteriorState:
    """Observations plus the factorisation of ``K_t + I``.

    Parameters
    ----------
    kernel : KernelSpec
    candidates : array_like, optional
        Fixed arm set. When given, per-candidate statistics are cached and
        kept current on every :meth:`update`.
    """

    def __init__(self, kernel: KernelSpec, candidates=None):
        self.kernel = kernel
        self._cap = 16
        self._t = 0
        self._dim = None
        self._X = None
        self._y = np.zeros(self._cap)
        self._L = np.zeros((self._cap, self._cap))
        self._z = np.zeros(self._cap)  # L^{-1} y
        self._logdet = 0.0
        self._alpha = None
        self.candidates = None
        if candidates is not None:
            C = np.atleast_2d(np.asarray(candidates, dtype=float))
            self.candidates = C
            self._dim = C.shape[1]
            self._X = np.zeros((self._cap, self._dim))
            self._Kcc = cross(kernel, C, C)
            self._Kcc = 0.5 * (self._Kcc + self._Kcc.T)
            self._W = np.zeros((self._cap, C.shape[0]))
            self._cmean = np.zeros(C.shape[0])
            self._ccov = self._Kcc.copy()

    # -- bookkeeping ------------------------------------------------------

    @property
    def t(self) -> int:
        return self._t

    @property
    def points(self) -> np.ndarray:
        if self._X is None:
            return np.zeros((0, 0))
        return self._X[: self._t].copy()

    @property
    def rewards(self) -> np.ndarray:
        return self._y[: self._t].copy()

    @property
    def chol(self) -> np.ndarray:
        """Lower Cholesky factor of ``K_t + I``."""
        return self._L[: self._t, : self._t].copy()

    @property
    def alpha(self) -> np.ndarray:
        """Solution of ``(K_t + I) alpha = y``."""
        if self._alpha is None:
            t = self._t
            if t == 0:
                self._alpha = np.zeros(0)
            else:
                self._alpha = solve_triangular(
                    self._L[:t, :t], self._z[:t], lower=True, trans="T"
                )
        return self._alpha

    def _grow(self):
        cap = 2 * self._cap
        L = np.zeros((cap, cap))
        L[: self._t, : self._t] = self._L[: self._t, : self._t]
        self._L = L
        for name in ("_y", "_z"):
            arr = np.zeros(cap)
            arr[: self._t] = getattr(self, name)[: self._t]
            setattr(self, name, arr)
        X = np.zeros((cap, self._dim))
        X[: self._t] = self._X[: self._t]
        self._X = X
        if self.candidates is not None:
            W = np.zeros((cap, self._W.shape[1]))
            W[: self._t] = self._W[: self._t]
            self._W = W
        self._cap = cap

    def _cross_points(self, X):
        return cross(self.kernel, X, self._X[: self._t])

    # -- updates ------------------------------------------------------------

    def update(self, x, y: float, index: int | None = None) -> "PosteriorState":
        """Append observation ``(x, y)`` in place and return ``self``.

        ``index`` names the candidate that ``x`` is, which lets the cached
        cross-kernel column be reused instead of a fresh triangular solve.
        """
        x = np.asarray(x, dtype=float).ravel()
        if self._dim is None:
            self._dim = x.shape[0]
            self._X = np.zeros((self._cap, self._dim))
        if x.shape[0] != self._dim:
            raise ValueError(f"dimension mismatch: {x.shape[0]} vs {self._dim}")
        kxx = float(diag(self.kernel, x)[0])
        t = self._t
        if index is not None and self.candidates is not None:
            l = self._W[:t, index].copy()
        elif t > 0:
            k = self._cross_points(x)[0]
            l = solve_triangular(self._L[:t, :t], k, lower=True)
        else:
            l = np.zeros(0)
        pivot_sq = kxx + 1.0 - float(l @ l)
        if pivot_sq <= PIVOT_FLOOR:
            raise NumericalDegeneracyError(
                f"Cholesky pivot {pivot_sq:.3e} at t={t + 1} is below {PIVOT_FLOOR}"
            )
        if t == self._cap:
            self._grow()
        d = math.sqrt(pivot_sq)
        self._L[t, :t] = l
        self._L[t, t] = d
        self._X[t] = x
        self._y[t] = y
        z_new = (y - float(l @ self._z[:t])) / d
        self._z[t] = z_new
        self._logdet += 2.0 * math.log(d)
        self._alpha = None
        if self.candidates is not None:
            kc = cross(self.kernel, x, self.candidates)[0]
            w = (kc - l @ self._W[:t]) / d
            self._W[t] = w
            self._cmean += w * z_new
            self._ccov -= np.outer(w, w)
        self._t = t + 1
        return self

    def copy(self) -> "PosteriorState":
        new = PosteriorState.__new__(PosteriorState)
        new.__dict__.update(
            {k: (v.copy() if isinstance(v, np.ndarray) else v) for k, v in self.__dict__.items()}
        )
        return new

    @classmethod
    def from_data(cls, kernel, points, rewards, candidates=None):
        """Build by successive updates from a sequence of observations."""
        state = cls(kernel, candidates)
        for x, y in zip(points, rewards):
            state.update(x, y)
        return state

    # -- queries ------------------------------------------------------------

    def mean(self, x):
        """Estimator ``f_hat`` at one point (float) or at rows of an array."""
        X = np.asarray(x, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if self._t == 0:
            out = np.zeros(X.shape[0])
        else:
            out = self._cross_points(X) @ self.alpha
        return float(out[0]) if single else out

    def weighted_norm(self, x):
        """``||Vbar^{-1/2} K(., x)||``, clamped at zero against round-off."""
        X = np.asarray(x, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        kxx = diag(self.kernel, X)
        if self._t == 0:
            out = np.sqrt(kxx)
        else:
            V = solve_triangular(
                self._L[: self._t, : self._t], self._cross_points(X).T, lower=True
            )
            out = np.sqrt(np.maximum(kxx - np.sum(V**2, axis=0), 0.0))
        return float(out[0]) if single else out

    def log_det(self) -> float:
        """``log det(I_t + K_t)``, equal to ``log det(Vbar_t)``."""
        return self._logdet

    def g_value(self, params: ConfidenceParams, x):
        """Uncertainty width ``g(x)``."""
        return g_scale(params, self._logdet) * self.weighted_norm(x)

    def f_tilde(self, params: ConfidenceParams, w: float, x):
        """Randomised estimator ``f_hat(x) + w * g(x)``."""
        if w == 0:
            return self.mean(x)
        return self.mean(x) + w * self.g_value(params, x)

    # -- candidate cache ----------------------------------------------------

    def has_candidates(self, candidates) -> bool:
        if self.candidates is None:
            return False
        if candidates is self.candidates:
            return True
        C = np.asarray(candidates)
        return C.shape == self.candidates.shape and np.array_equal(C, self.candidates)

    def candidate_mean(self) -> np.ndarray:
        return self._cmean.copy()

    def candidate_weighted_norm(self) -> np.ndarray:
        return np.sqrt(np.maximum(np.diag(self._ccov), 0.0))

    def candidate_cov(self) -> np.ndarray:
        """Posterior covariance ``K_cc - K_ct (K_t + I)^{-1} K_tc`` over the candidates."""
        C = self._ccov
        return 0.5 * (C + C.T)

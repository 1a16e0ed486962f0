"""Finite-arm reward environments.

Standard benchmark functions are written in their usual minimisation form
and negated when turned into environments, so higher reward is better.
Candidate coordinates are mapped affinely into ``[-1/sqrt(d), 1/sqrt(d)]^d``,
which keeps every arm inside the unit ball.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Environment",
    "ParseError",
    "LowerBoundInstance",
    "holder_table",
    "cross_in_tray",
    "ackley",
    "hartmann6",
    "SYNTHETIC",
    "make_synthetic",
    "make_lower_bound",
    "load_perovskite",
    "step",
    "to_unit_box",
    "from_unit_box",
]


class ParseError(ValueError):
    """Malformed environment input file."""


# -- benchmark functions (minimisation form, rows are points) ---------------


def holder_table(x):
    x = np.atleast_2d(x)
    x1, x2 = x[:, 0], x[:, 1]
    r = np.sqrt(x1**2 + x2**2)
    return -np.abs(np.sin(x1) * np.cos(x2) * np.exp(np.abs(1.0 - r / np.pi)))


def cross_in_tray(x):
    x = np.atleast_2d(x)
    x1, x2 = x[:, 0], x[:, 1]
    r = np.sqrt(x1**2 + x2**2)
    inner = np.abs(np.sin(x1) * np.sin(x2) * np.exp(np.abs(100.0 - r / np.pi))) + 1.0
    return -1e-4 * inner**0.1


def ackley(x, a=20.0, b=0.2, c=2.0 * np.pi):
    x = np.atleast_2d(x)
    d = x.shape[1]
    s1 = np.sum(x**2, axis=1) / d
    s2 = np.sum(np.cos(c * x), axis=1) / d
    return -a * np.exp(-b * np.sqrt(s1)) - np.exp(s2) + a + np.e


_H6_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
_H6_A = np.array(
    [
        [10, 3, 17, 3.50, 1.7, 8],
        [0.05, 10, 17, 0.1, 8, 14],
        [3, 3.5, 1.7, 10, 17, 8],
        [17, 8, 0.05, 10, 0.1, 14],
    ]
)
_H6_P = 1e-4 * np.array(
    [
        [1312, 1696, 5569, 124, 8283, 5886],
        [2329, 4135, 8307, 3736, 1004, 9991],
        [2348, 1451, 3522, 2883, 3047, 6650],
        [4047, 8828, 8732, 5743, 1091, 381],
    ]
)


def hartmann6(x):
    x = np.atleast_2d(x)
    inner = np.sum(_H6_A[None, :, :] * (x[:, None, :] - _H6_P[None, :, :]) ** 2, axis=2)
    return -np.sum(_H6_ALPHA * np.exp(-inner), axis=1)


# name -> (function, dimension, lower, upper)
SYNTHETIC = {
    "holder-table": (holder_table, 2, -10.0, 10.0),
    "cross-in-tray": (cross_in_tray, 2, -10.0, 10.0),
    "ackley": (ackley, 4, -32.768, 32.768),
    "hartmann": (hartmann6, 6, 0.0, 1.0),
}


def to_unit_box(x, lo, hi):
    """Affine map from ``[lo, hi]^d`` onto ``[-1/sqrt(d), 1/sqrt(d)]^d``."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    d = x.shape[1]
    return (2.0 * (x - lo) / (hi - lo) - 1.0) / math.sqrt(d)


def from_unit_box(z, lo, hi):
    z = np.atleast_2d(np.asarray(z, dtype=float))
    d = z.shape[1]
    return lo + (z * math.sqrt(d) + 1.0) * (hi - lo) / 2.0


# -- environments -----------------------------------------------------------


@dataclass(frozen=True)
class Environment:
    """Arm set plus true mean rewards; regret is measured against the best arm."""

    name: str
    candidates: np.ndarray
    values: np.ndarray
    noise_sigma: float = 0.0
    reward_fn: Callable | None = field(default=None, compare=False, repr=False)
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        C = np.atleast_2d(np.asarray(self.candidates, dtype=float))
        v = np.asarray(self.values, dtype=float).ravel()
        if C.shape[0] != v.shape[0]:
            raise ValueError("one value per candidate is required")
        if C.shape[0] < 1:
            raise ValueError("environment needs at least one arm")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        C.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "candidates", C)
        object.__setattr__(self, "values", v)

    @property
    def n_arms(self):
        return self.candidates.shape[0]

    @property
    def dim(self):
        return self.candidates.shape[1]

    @property
    def optimum_index(self) -> int:
        return int(np.argmax(self.values))

    @property
    def optimum_value(self) -> float:
        return float(self.values.max())

    def reward(self, x) -> float:
        """``f*`` at an arbitrary point (benchmarks) or a listed arm (tables)."""
        if self.reward_fn is not None:
            return float(self.reward_fn(x))
        x = np.asarray(x, dtype=float)
        hits = np.flatnonzero(np.all(self.candidates == x, axis=1))
        if hits.size == 0:
            raise KeyError("point is not one of the candidate arms")
        return float(self.values[hits[0]])


def _as_rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


@dataclass(frozen=True)
class _BoxReward:
    name: str

    def __call__(self, z):
        fn, _, lo, hi = SYNTHETIC[self.name]
        return -fn(from_unit_box(z, lo, hi))[0]


@dataclass(frozen=True)
class _LinearReward:
    theta: tuple

    def __call__(self, x):
        return float(np.asarray(x, dtype=float) @ np.asarray(self.theta))


def make_synthetic(name: str, d: int | None = None, n_arms: int = 50, rng=None) -> Environment:
    """Sample ``n_arms`` uniform points from a benchmark's box domain.

    Rewards are the negated benchmark values; noise defaults to 0.01 and can
    be changed with :func:`dataclasses.replace`.
    """
    if name not in SYNTHETIC:
        raise ValueError(f"unknown synthetic function {name!r}; expected one of {sorted(SYNTHETIC)}")
    fn, dim, lo, hi = SYNTHETIC[name]
    if d is not None and d != dim:
        raise ValueError(f"{name} is defined for d={dim}, got d={d}")
    if n_arms < 2:
        raise ValueError("a bandit needs n_arms >= 2")
    raw = _as_rng(rng).uniform(lo, hi, size=(n_arms, dim))
    values = -fn(raw)
    return Environment(
        name,
        to_unit_box(raw, lo, hi),
        values,
        noise_sigma=0.01,
        reward_fn=_BoxReward(name),
        info={"raw_candidates": raw},
    )


@dataclass(frozen=True)
class LowerBoundInstance:
    """Linear instance on the standard basis with gap on the first arm."""

    d: int
    T: int
    R: float
    D: float
    beta: float = 1.0 / 6.0
    alpha: float = 5.1 / 6.0

    @property
    def Delta(self) -> float:
        return (self.R * math.sqrt(0.5 * self.d) + self.D) / (
            2.0 * math.sqrt(1.0 + self.beta * self.T / (self.d - 1))
        )


def make_lower_bound(d: int, T: int, R: float = 1.0, D: float = 1.0) -> Environment:
    """Basis arms ``e_1..e_d``, ``f*(e_1) = Delta``, others 0, no noise."""
    if d < 2:
        raise ValueError("lower-bound instance needs d >= 2")
    inst = LowerBoundInstance(d, T, R, D)
    if T <= math.exp(d) / (inst.alpha - inst.beta):
        warnings.warn(
            f"T={T} is below e^d/(alpha-beta)={math.exp(d) / (inst.alpha - inst.beta):.1f}; "
            "the lower-bound mechanism is not guaranteed",
            stacklevel=2,
        )
    arms = np.eye(d)
    values = np.zeros(d)
    values[0] = inst.Delta
    return Environment(
        f"lower-bound-d{d}",
        arms,
        values,
        noise_sigma=0.0,
        reward_fn=_LinearReward(tuple(values)),
        info={"instance": inst},
    )


def _parse_float(text, row, col):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ParseError(f"row {row}: column {col!r} has non-numeric value {text!r}") from None


def load_perovskite(path, target: str = "target", n_features: int = 3) -> Environment:
    """Tabular environment from a CSV file.

    The file has a header row; the column named ``target`` is the reward
    and the first ``n_features`` other numeric columns are the arm features.
    A column counts as numeric when its first data cell parses as a float.
    Row numbers in errors count the header as row 1.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if target not in header:
        raise ParseError(f"{path}: missing target column {target!r}")
    if not body:
        raise ParseError(f"{path}: header only, no data rows")
    if len(body) < 2:
        raise ParseError(f"{path}: need at least 2 data rows, got {len(body)}")
    t_col = header.index(target)
    feat_cols = []
    for j, name in enumerate(header):
        if j == t_col or j >= len(body[0]):
            continue
        try:
            float(body[0][j])
        except ValueError:
            continue
        feat_cols.append(j)
        if len(feat_cols) == n_features:
            break
    if len(feat_cols) < n_features:
        raise ParseError(f"{path}: need {n_features} numeric feature columns, found {len(feat_cols)}")
    X = np.empty((len(body), n_features))
    y = np.empty(len(body))
    for i, r in enumerate(body):
        row_no = i + 2
        if len(r) != len(header):
            raise ParseError(f"row {row_no}: expected {len(header)} cells, got {len(r)}")
        y[i] = _parse_float(r[t_col], row_no, target)
        for k, j in enumerate(feat_cols):
            X[i, k] = _parse_float(r[j], row_no, header[j])
    lo, hi = X.min(axis=0), X.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    Z = (2.0 * (X - lo) / span - 1.0) / math.sqrt(n_features)
    Z[:, hi == lo] = 0.0
    return Environment(
        "perovskite",
        Z,
        y,
        noise_sigma=0.0,
        info={"feature_columns": [header[j] for j in feat_cols], "raw_features": X},
    )


def step(env: Environment, arm_index: int, rng) -> tuple[float, float]:
    """Pull one arm: noisy reward and instantaneous pseudo-regret."""
    if not 0 <= arm_index < env.n_arms:
        raise ValueError(f"arm index {arm_index} out of range [0, {env.n_arms})")
    f = float(env.values[arm_index])
    y = f + (env.noise_sigma * rng.standard_normal() if env.noise_sigma > 0 else 0.0)
    return y, env.optimum_value - f

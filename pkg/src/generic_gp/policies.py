"""Arm-selection rules over a finite candidate set.

Generic-GP draws a single scalar ``w_t`` per round and plays
``argmax_x f_hat(x) + w_t * g(x)``. The two baselines follow the
Chowdhury & Gopalan (2017) forms with the information gain estimated
online as ``log det(Vbar_{t-1}) / 2``.

Policies only ever see the posterior, the candidates, the round index and a
random generator; rewards of unplayed arms and the optimum are not part of
the interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .exploration import (
    Bernoulli,
    Categorical,
    ConstantSchedule,
    ExplorationSchedule,
    ScheduleSummary,
    StdGaussian,
    SwitchSchedule,
    parse_exploration,
)
from .kernels import cross
from .posterior import ConfidenceParams, PosteriorState, g_scale

__all__ = [
    "GenericGP",
    "IgpUcb",
    "GpTs",
    "SelectionRecord",
    "select_arm",
    "candidate_stats",
    "preset",
    "parse_policy",
    "PRESETS",
]

PRESETS = (
    "simple-ucb",
    "simple-bernoulli",
    "simple-gaussian",
    "simple-categorical",
    "igp-ucb",
    "gp-ts",
)

TS_JITTER = 1e-8


def _check_delta(delta):
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")


@dataclass(frozen=True)
class GenericGP:
    schedule: ExplorationSchedule
    params: ConfidenceParams
    name: str = "generic-gp"


@dataclass(frozen=True)
class IgpUcb:
    params: ConfidenceParams
    delta: float = 0.1
    name: str = "igp-ucb"

    def __post_init__(self):
        _check_delta(self.delta)

    def beta(self, log_det):
        gamma = 0.5 * log_det
        return self.params.D + self.params.R * math.sqrt(
            2.0 * (gamma + 1.0 + math.log(1.0 / self.delta))
        )


@dataclass(frozen=True)
class GpTs:
    params: ConfidenceParams
    horizon: int
    delta: float = 0.1
    name: str = "gp-ts"
    # overrides v_t when set; 0 reduces GP-TS to the greedy mean
    scale: float | None = None

    def __post_init__(self):
        _check_delta(self.delta)
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")

    def v(self, log_det):
        if self.scale is not None:
            return self.scale
        gamma = 0.5 * log_det
        return self.params.D + self.params.R * math.sqrt(
            2.0 * (gamma + 1.0 + math.log(2.0 / self.delta))
        )


@dataclass
class SelectionRecord:
    round: int
    arm_index: int
    w_drawn: float | None = None
    scores: np.ndarray | None = field(default=None, repr=False)


def candidate_stats(state: PosteriorState, candidates):
    """Mean and weighted norm of every candidate, using the cache when possible."""
    if state.has_candidates(candidates):
        return state.candidate_mean(), state.candidate_weighted_norm()
    C = np.atleast_2d(np.asarray(candidates, dtype=float))
    return state.mean(C), state.weighted_norm(C)


def _candidate_cov(state, candidates):
    if state.has_candidates(candidates):
        return state.candidate_cov()
    C = np.atleast_2d(np.asarray(candidates, dtype=float))
    Kcc = cross(state.kernel, C, C)
    t = state.t
    if t == 0:
        return 0.5 * (Kcc + Kcc.T)
    V = solve_triangular(state.chol, cross(state.kernel, state.points, C), lower=True)
    S = Kcc - V.T @ V
    return 0.5 * (S + S.T)


def _mvn_factor(cov):
    n = cov.shape[0]
    try:
        return np.linalg.cholesky(cov + TS_JITTER * np.eye(n))
    except np.linalg.LinAlgError:
        vals, vecs = np.linalg.eigh(cov)
        return vecs * np.sqrt(np.maximum(vals, 0.0))


def select_arm(policy, state: PosteriorState, candidates, t: int, rng) -> SelectionRecord:
    """Choose an arm for round ``t`` (1-based). Ties go to the lowest index."""
    if len(candidates) == 0:
        raise ValueError("candidate set is empty")
    mu, wn = candidate_stats(state, candidates)
    if isinstance(policy, GenericGP):
        rewards = state.rewards
        summary = ScheduleSummary(t, float(rewards.mean()) if rewards.size else 0.0)
        w = float(policy.schedule(t, summary).sample(rng))
        if w == 0.0:
            scores = mu
        else:
            scores = mu + w * g_scale(policy.params, state.log_det()) * wn
        return SelectionRecord(t, int(np.argmax(scores)), w, scores)
    if isinstance(policy, IgpUcb):
        scores = mu + policy.beta(state.log_det()) * wn
        return SelectionRecord(t, int(np.argmax(scores)), None, scores)
    if isinstance(policy, GpTs):
        v = policy.v(state.log_det())
        if v == 0.0:
            scores = mu
        else:
            A = _mvn_factor(_candidate_cov(state, candidates))
            scores = mu + v * (A @ rng.standard_normal(A.shape[1]))
        return SelectionRecord(t, int(np.argmax(scores)), None, scores)
    raise TypeError(f"unknown policy {policy!r}")


def preset(name: str, params: ConfidenceParams, T: int, **hyper):
    """Named policy with the default experimental wiring.

    ``simple-bernoulli`` takes ``p1``/``p2`` (default 0.5 and 0.25) and
    switches at round ``T // 2 + 1``; ``simple-categorical`` takes ``K``
    (default 4, uniform); ``igp-ucb`` and ``gp-ts`` take ``delta``.
    """
    if name == "simple-ucb":
        return GenericGP(ConstantSchedule(Bernoulli(1.0)), params, name)
    if name == "simple-bernoulli":
        p1 = float(hyper.get("p1", 0.5))
        p2 = float(hyper.get("p2", 0.25))
        sched = SwitchSchedule(Bernoulli(p1), Bernoulli(p2), T // 2 + 1)
        return GenericGP(sched, params, name)
    if name == "simple-gaussian":
        return GenericGP(ConstantSchedule(StdGaussian), params, name)
    if name == "simple-categorical":
        K = int(hyper.get("k", hyper.get("K", 4)))
        return GenericGP(ConstantSchedule(Categorical.uniform(K)), params, name)
    if name == "igp-ucb":
        return IgpUcb(params, float(hyper.get("delta", 0.1)))
    if name == "gp-ts":
        return GpTs(params, T, float(hyper.get("delta", 0.1)))
    raise ValueError(f"unknown policy {name!r}; expected one of {PRESETS}")


def parse_policy(text: str, params: ConfidenceParams, T: int):
    """Policy from ``"<preset>[:k=v,...]"`` or an exploration spec such as ``"mixture:0.5:1"``."""
    name, _, rest = text.strip().lower().partition(":")
    if name in PRESETS:
        hyper = {}
        for item in filter(None, rest.split(",")):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"bad policy hyperparameter {item!r} in {text!r}")
            hyper[key.strip()] = val.strip()
        return preset(name, params, T, **hyper)
    return GenericGP(parse_exploration(text, T), params, text.strip().lower())

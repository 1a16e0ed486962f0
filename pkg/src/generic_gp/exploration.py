"""Exploration distributions for the scalar weight ``w_t``.

Each round Generic-GP draws one real ``w_t`` and scores every arm with
``f_hat + w_t * g``. A law is admissible when ``P{w >= 1} > 0``; the
constants

* ``C1 = P{w >= 1}``
* ``C2 = E[max_s |w_s|]``
* ``C3 = E[max_s |w_s| / C1_s] + max_s E[|w_s| / C1_s]``

enter the regret bound. This module computes ``C1`` exactly, closed-form
upper bounds on ``C2`` and ``C3`` for the supported families, and
Monte-Carlo estimates of both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import ndtr

__all__ = [
    "Bernoulli",
    "Gaussian",
    "StdGaussian",
    "Categorical",
    "Mixture",
    "UnsupportedScheduleError",
    "ScheduleSummary",
    "ExplorationSchedule",
    "ConstantSchedule",
    "SwitchSchedule",
    "AdaptiveSchedule",
    "sample",
    "c1",
    "analytic_c_bounds",
    "monte_carlo_c",
    "MonteCarloC",
    "parse_exploration",
    "round_rng",
]


# -- per-round random streams ----------------------------------------------

STREAM_ENV = 0
STREAM_POLICY = 1
STREAM_NOISE = 2
STREAM_MC = 3


def round_rng(seed: int, t: int, stream: int) -> np.random.Generator:
    """Independent generator for ``(seed, round, stream)``.

    Streams are keyed on the round index so inserting extra draws in one
    round never shifts the randomness of another.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, t, stream])))


# -- distributions ---------------------------------------------------------


@dataclass(frozen=True)
class Bernoulli:
    """``Ber(p)`` on ``{0, 1}``."""

    p: float

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"Bernoulli p must lie in (0, 1], got {self.p}")

    def sample(self, rng, size=None):
        if self.p == 1.0:
            return 1.0 if size is None else np.ones(size)
        draw = rng.random(size) < self.p
        return float(draw) if size is None else draw.astype(float)

    def c1(self):
        return self.p

    def mean_abs(self):
        return self.p


@dataclass(frozen=True)
class Gaussian:
    """Zero-mean ``N(0, sigma^2)``."""

    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"Gaussian sigma must be positive, got {self.sigma}")

    def sample(self, rng, size=None):
        out = self.sigma * rng.standard_normal(size)
        return float(out) if size is None else out

    def c1(self):
        return float(ndtr(-1.0 / self.sigma))

    def mean_abs(self):
        return self.sigma * math.sqrt(2.0 / math.pi)


StdGaussian = Gaussian(1.0)


@dataclass(frozen=True)
class Categorical:
    """Atoms ``i / K`` for ``i = 1..K`` with probabilities ``probs``."""

    probs: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) == 0:
            raise ValueError("Categorical needs at least one atom")
        if any(p <= 0 for p in probs):
            raise ValueError("Categorical probabilities must be positive")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"Categorical probabilities sum to {sum(probs)!r}, not 1")

    @classmethod
    def uniform(cls, K):
        return cls((1.0 / K,) * K)

    @property
    def K(self):
        return len(self.probs)

    @property
    def support(self):
        return np.arange(1, self.K + 1) / self.K

    def sample(self, rng, size=None):
        idx = rng.choice(self.K, size=size, p=np.asarray(self.probs))
        out = (np.asarray(idx) + 1) / self.K
        return float(out) if size is None else out

    def c1(self):
        return self.probs[-1]

    def mean_abs(self):
        return float(np.dot(self.support, self.probs))


@dataclass(frozen=True)
class Mixture:
    """``Ber(1)`` with probability ``rho``, otherwise ``N(0, sigma^2)``."""

    rho: float
    sigma: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.rho <= 1.0:
            raise ValueError(f"Mixture rho must lie in (0, 1], got {self.rho}")
        if not self.sigma > 0:
            raise ValueError(f"Mixture sigma must be positive, got {self.sigma}")

    def sample(self, rng, size=None):
        pick = rng.random(size) < self.rho
        gauss = self.sigma * rng.standard_normal(size)
        out = np.where(pick, 1.0, gauss)
        return float(out) if size is None else out

    def c1(self):
        return self.rho + (1.0 - self.rho) * float(ndtr(-1.0 / self.sigma))

    def mean_abs(self):
        return self.rho + (1.0 - self.rho) * self.sigma * math.sqrt(2.0 / math.pi)


def sample(dist, rng, size=None):
    """Draw ``w`` (or an array of draws) from ``dist``."""
    return dist.sample(rng, size)


def c1(dist) -> float:
    """Exact ``P{w >= 1}``."""
    return dist.c1()


# -- schedules ---------------------------------------------------------------


class UnsupportedScheduleError(ValueError):
    """No closed-form C bounds exist for this schedule."""


class ScheduleSummary(NamedTuple):
    """History summary visible to a schedule: round index and mean reward so far."""

    t: int
    mean_reward: float = 0.0


class ExplorationSchedule:
    """Maps round ``t`` (1-based) and a history summary to a distribution."""

    history_free = True

    def __call__(self, t: int, summary: ScheduleSummary | None = None):
        raise NotImplementedError

    def distributions(self, T: int) -> list:
        if not self.history_free:
            raise UnsupportedScheduleError("schedule depends on history")
        return [self(t) for t in range(1, T + 1)]


@dataclass(frozen=True)
class ConstantSchedule(ExplorationSchedule):
    dist: object

    def __call__(self, t, summary=None):
        return self.dist


@dataclass(frozen=True)
class SwitchSchedule(ExplorationSchedule):
    """``first`` for rounds ``t < switch_round``, ``second`` from then on."""

    first: object
    second: object
    switch_round: int

    def __call__(self, t, summary=None):
        return self.first if t < self.switch_round else self.second


@dataclass(frozen=True)
class AdaptiveSchedule(ExplorationSchedule):
    """Schedule driven by a user function of :class:`ScheduleSummary`.

    The function never sees earlier ``w`` draws, so the weights stay
    independent given the chosen laws.
    """

    rule: Callable = field(compare=False)
    history_free = False

    def __call__(self, t, summary=None):
        return self.rule(summary if summary is not None else ScheduleSummary(t))


# -- C constants -------------------------------------------------------------


def _family(dist):
    if isinstance(dist, (Bernoulli, Categorical)):
        return "bounded"
    return type(dist).__name__


def analytic_c_bounds(schedule: ExplorationSchedule, T: int) -> tuple[float, float]:
    """Closed-form upper bounds ``(C2, C3)`` over horizon ``T``.

    Supported: laws on ``[0, 1]`` (Bernoulli, Categorical) give
    ``(1, 2 / min C1)``; Gaussian laws use the maximal inequality
    ``E max |w| <= max sigma * sqrt(2 log 2T)``; Ber(1)/Gaussian mixtures add
    one for the Bernoulli branch and divide by ``min rho``.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    dists = schedule.distributions(T)
    families = {_family(d) for d in dists}
    if len(families) != 1:
        raise UnsupportedScheduleError(f"mixed families {sorted(families)}")
    family = families.pop()
    lmax = math.sqrt(2.0 * math.log(2.0 * T))
    l1 = math.sqrt(2.0 * math.log(2.0))
    if family == "bounded":
        return 1.0, 2.0 / min(d.c1() for d in dists)
    if family == "Gaussian":
        s = max(d.sigma for d in dists)
        return s * lmax, s * (lmax + l1) / min(d.c1() for d in dists)
    if family == "Mixture":
        s = max(d.sigma for d in dists)
        rho = min(d.rho for d in dists)
        return 1.0 + s * lmax, (1.0 + s * (lmax + l1)) / rho
    raise UnsupportedScheduleError(f"no closed form for {family}")


class MonteCarloC(NamedTuple):
    c2: float
    c2_se: float
    c3: float
    c3_se: float


def _seed_entropy(rng):
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(2**63))
    return int(rng)


def monte_carlo_c(schedule: ExplorationSchedule, T: int, n_trials: int, rng) -> MonteCarloC:
    """Estimate ``C2`` and ``C3`` from ``n_trials`` independent trajectories.

    Round ``t`` of every trajectory is drawn from its own stream, so the
    estimates for a shorter horizon use exactly the prefix of the draws for a
    longer one (the estimates are then non-decreasing in ``T``).
    """
    if n_trials < 100:
        raise ValueError("n_trials must be >= 100")
    dists = schedule.distributions(T)
    seed = _seed_entropy(rng)
    run_max = np.zeros(n_trials)
    run_max_scaled = np.zeros(n_trials)
    best_mean, best_se = -np.inf, 0.0
    for t, dist in enumerate(dists, start=1):
        w = np.abs(np.asarray(dist.sample(round_rng(seed, t, STREAM_MC), n_trials), dtype=float))
        u = w / dist.c1()
        np.maximum(run_max, w, out=run_max)
        np.maximum(run_max_scaled, u, out=run_max_scaled)
        m = float(u.mean())
        if m > best_mean:
            best_mean, best_se = m, float(u.std(ddof=1) / math.sqrt(n_trials))
    root_n = math.sqrt(n_trials)
    c2 = float(run_max.mean())
    c2_se = float(run_max.std(ddof=1) / root_n)
    c3 = float(run_max_scaled.mean()) + best_mean
    c3_se = math.hypot(float(run_max_scaled.std(ddof=1) / root_n), best_se)
    return MonteCarloC(c2, c2_se, c3, c3_se)


# -- config strings ------------------------------------------------------------


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def parse_exploration(text: str, T: int | None = None) -> ExplorationSchedule:
    """Parse an exploration config string.

    ``"ucb"``, ``"gaussian"``, ``"gaussian:<sigma>"``, ``"bernoulli:<p>"``,
    ``"bernoulli:<p1>,<p2>[@<t_switch>]"`` (switch defaults to ``T//2 + 1``),
    ``"categorical:<K>[:<p1>,...,<pK>]"`` and ``"mixture:<rho>:<sigma>"``.
    """
    parts = text.strip().lower().split(":")
    name = parts[0]
    try:
        if name == "ucb" and len(parts) == 1:
            return ConstantSchedule(Bernoulli(1.0))
        if name == "gaussian" and len(parts) <= 2:
            return ConstantSchedule(Gaussian(float(parts[1]) if len(parts) == 2 else 1.0))
        if name == "bernoulli" and len(parts) == 2:
            body, _, switch = parts[1].partition("@")
            ps = _floats(body)
            if len(ps) == 1 and not switch:
                return ConstantSchedule(Bernoulli(ps[0]))
            if len(ps) == 2:
                if switch:
                    t_switch = int(switch)
                elif T is not None:
                    t_switch = T // 2 + 1
                else:
                    raise ValueError("switch round needs '@t' or a horizon")
                return SwitchSchedule(Bernoulli(ps[0]), Bernoulli(ps[1]), t_switch)
        if name == "categorical" and len(parts) in (2, 3):
            K = int(parts[1])
            if len(parts) == 2:
                return ConstantSchedule(Categorical.uniform(K))
            probs = _floats(parts[2])
            if len(probs) != K:
                raise ValueError(f"expected {K} probabilities, got {len(probs)}")
            return ConstantSchedule(Categorical(tuple(probs)))
        if name == "mixture" and len(parts) == 3:
            return ConstantSchedule(Mixture(float(parts[1]), float(parts[2])))
    except ValueError as exc:
        raise ValueError(f"bad exploration spec {text!r}: {exc}") from None
    raise ValueError(f"bad exploration spec {text!r}")

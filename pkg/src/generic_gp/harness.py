"""Multi-seed regret experiments.

A run plays ``T`` rounds of select -> pull -> update. The harness knows the
true rewards and accumulates pseudo-regret; the policy only receives the
posterior, the candidate arms, the round index and a generator.

Randomness is keyed on ``(seed, round, stream)`` with separate streams for
the environment, the policy and the observation noise, and seed ``i`` of an
experiment is ``master_seed + i``. Results are therefore identical whether
seeds run serially or in a process pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .environments import Environment, load_perovskite, make_lower_bound, make_synthetic, step, SYNTHETIC
from .exploration import STREAM_ENV, STREAM_NOISE, STREAM_POLICY, round_rng
from .kernels import KernelSpec, linear, rbf
from .policies import GenericGP, parse_policy, select_arm
from .posterior import ConfidenceParams, NumericalDegeneracyError, PosteriorState

__all__ = [
    "RunConfig",
    "RoundRecord",
    "RunResult",
    "ExperimentError",
    "build_environment",
    "resolve",
    "run_single",
    "run_experiment",
    "emit_csv",
    "emit_plot",
    "regret_growth",
    "loglog_slope",
    "pseudo_regret",
    "DEFAULT_NOISE",
    "LENGTHSCALE_FRACTION",
    "min_c1",
]

DEFAULT_NOISE = 0.01
LENGTHSCALE_FRACTION = 0.2
# rescaled boxes [-1/sqrt(d), 1/sqrt(d)]^d all have diameter 2
RESCALED_DIAMETER = 2.0


class ExperimentError(RuntimeError):
    """A seed of an experiment failed."""


@dataclass(frozen=True)
class RunConfig:
    """Experiment description. ``None`` fields take the documented defaults.

    Defaults: RBF lengthscale ``0.2 * 2``, ``R`` equal to the noise level
    (1 for the lower-bound instance), ``D = max |f*|`` over the candidate arms
    (1 for the lower-bound instance).
    """

    env_spec: str | Environment = "ackley"
    policy_spec: str = "simple-ucb"
    kernel: KernelSpec | None = None
    T: int = 1000
    n_seeds: int = 25
    master_seed: int = 0
    R: float | None = None
    D: float | None = None
    n_arms: int = 50
    noise_sigma: float | None = None

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be >= 1")

    @property
    def seeds(self):
        return [self.master_seed + i for i in range(self.n_seeds)]


class RoundRecord(NamedTuple):
    round: int
    arm_index: int
    w_drawn: float | None
    reward: float
    instant_regret: float
    cumulative_regret: float


def build_environment(spec: str, seed: int = 0, n_arms: int = 50, T: int = 1000,
                      R: float | None = None, D: float | None = None) -> Environment:
    """Environment from ``"<synthetic>[:n_arms]"``, ``"perovskite:<path>"`` or
    ``"lower-bound:<d>"``. An :class:`Environment` instance is returned as is."""
    if isinstance(spec, Environment):
        return spec
    name, _, rest = spec.strip().partition(":")
    name = name.lower()
    if name in SYNTHETIC:
        n = int(rest) if rest else n_arms
        return make_synthetic(name, n_arms=n, rng=round_rng(seed, 0, STREAM_ENV))
    if name == "perovskite":
        if not rest:
            raise ValueError("perovskite environment needs a CSV path: 'perovskite:<path>'")
        return load_perovskite(rest)
    if name == "lower-bound":
        d = int(rest) if rest else 2
        return make_lower_bound(d, T, 1.0 if R is None else R, 1.0 if D is None else D)
    raise ValueError(f"unknown environment {spec!r}")


def resolve(config: RunConfig, env: Environment):
    """Concrete ``(environment, kernel, params)`` after applying defaults."""
    lower = "instance" in env.info
    if config.noise_sigma is not None:
        env = replace(env, noise_sigma=config.noise_sigma)
    kernel = config.kernel
    if kernel is None:
        kernel = linear() if lower else rbf(LENGTHSCALE_FRACTION * RESCALED_DIAMETER)
    R = config.R
    if R is None:
        R = 1.0 if lower else env.noise_sigma
    D = config.D
    if D is None:
        D = 1.0 if lower else float(np.max(np.abs(env.values)))
    return env, kernel, ConfidenceParams(R, D)


def run_single(config: RunConfig, seed: int) -> list[RoundRecord]:
    env = build_environment(config.env_spec, seed, config.n_arms, config.T, config.R, config.D)
    env, kernel, params = resolve(config, env)
    policy = parse_policy(config.policy_spec, params, config.T)
    state = PosteriorState(kernel, env.candidates)
    cands = state.candidates
    records = []
    cum = 0.0
    for t in range(1, config.T + 1):
        sel = select_arm(policy, state, cands, t, round_rng(seed, t, STREAM_POLICY))
        y, regret = step(env, sel.arm_index, round_rng(seed, t, STREAM_NOISE))
        try:
            state.update(cands[sel.arm_index], y, index=sel.arm_index)
        except NumericalDegeneracyError as exc:
            raise ExperimentError(
                f"seed {seed}, round {t}, arm {sel.arm_index}: {exc}"
            ) from exc
        cum += regret
        records.append(RoundRecord(t, sel.arm_index, sel.w_drawn, y, regret, cum))
    return records


@dataclass
class RunResult:
    config: RunConfig
    seeds: list
    per_seed: list = field(repr=False)

    @property
    def cumulative(self) -> np.ndarray:
        """``(n_seeds, T)`` cumulative pseudo-regret."""
        return np.array([[r.cumulative_regret for r in recs] for recs in self.per_seed])

    @property
    def mean(self) -> np.ndarray:
        return self.cumulative.mean(axis=0)

    @property
    def std(self) -> np.ndarray:
        return self.cumulative.std(axis=0)

    @property
    def label(self) -> str:
        return self.config.policy_spec

    @property
    def terminal(self) -> np.ndarray:
        """Cumulative regret at ``T`` for every seed."""
        return self.cumulative[:, -1]


def _run_seed(args):
    config, seed = args
    return run_single(config, seed)


def _worker_count(workers):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("BANDIT_THREADS")
    return max(1, int(env)) if env else 1


def run_experiment(config: RunConfig, workers: int | None = None) -> RunResult:
    """Run every seed; ``workers`` (or ``BANDIT_THREADS``) caps the process pool."""
    seeds = config.seeds
    n = min(_worker_count(workers), len(seeds))
    jobs = [(config, s) for s in seeds]
    if n == 1:
        runs = []
        for job in jobs:
            try:
                runs.append(_run_seed(job))
            except Exception as exc:
                raise ExperimentError(f"seed {job[1]} failed: {exc}") from exc
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            futures = [pool.submit(_run_seed, job) for job in jobs]
            runs = []
            for job, fut in zip(jobs, futures):
                try:
                    runs.append(fut.result())
                except Exception as exc:
                    raise ExperimentError(f"seed {job[1]} failed: {exc}") from exc
    return RunResult(config, seeds, runs)


def pseudo_regret(env: Environment, arm_indices) -> np.ndarray:
    """Cumulative pseudo-regret recomputed from a log of played arms."""
    gaps = env.optimum_value - env.values[np.asarray(arm_indices, dtype=int)]
    return np.cumsum(gaps)


# -- probes ------------------------------------------------------------------


def regret_growth(curve, window: int = 100) -> tuple[float, float]:
    """Growth of a cumulative curve over its first and last ``window`` rounds."""
    c = np.asarray(curve, dtype=float)
    if c.size < window:
        raise ValueError("curve shorter than the window")
    first = c[window - 1]
    last = c[-1] - c[-window - 1] if c.size > window else c[-1]
    return float(first), float(last)


def loglog_slope(curve, t0: int = 100, t1: int | None = None) -> float:
    """Least-squares slope of ``log R(t)`` on ``log t`` over rounds ``t0..t1``."""
    c = np.asarray(curve, dtype=float)
    t1 = c.size if t1 is None else t1
    t = np.arange(t0, t1 + 1)
    y = c[t0 - 1 : t1]
    if np.any(y <= 0):
        raise ValueError("log-log fit needs strictly positive regret")
    slope, _ = np.polyfit(np.log(t), np.log(y), 1)
    return float(slope)


# -- output ----------------------------------------------------------------------


def _fmt(v):
    s = f"{v:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


def emit_csv(result: RunResult, path, per_seed: bool = False) -> None:
    """Write ``round,mean_cum_regret,std_cum_regret`` (plus ``seed_<s>`` columns)."""
    mean, std = result.mean, result.std
    cum = result.cumulative
    header = ["round", "mean_cum_regret", "std_cum_regret"]
    if per_seed:
        header += [f"seed_{s}" for s in result.seeds]
    lines = [",".join(header)]
    for i in range(mean.size):
        row = [str(i + 1), _fmt(mean[i]), _fmt(std[i])]
        if per_seed:
            row += [_fmt(v) for v in cum[:, i]]
        lines.append(",".join(row))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


def emit_plot(results, path, title: str = "") -> None:
    """SVG of mean cumulative regret with a +/- 1 std band per labelled result."""
    results = list(results)
    if not results:
        raise ValueError("nothing to plot")
    W, H = 640, 420
    left, right, top, bottom = 70, 170, 30, 50
    pw, ph = W - left - right, H - top - bottom
    curves = [(label, res.mean, res.std) for label, res in results]
    T = max(m.size for _, m, _ in curves)
    ymax = max(float(np.max(m + s)) for _, m, s in curves)
    ymax = ymax if ymax > 0 else 1.0

    def px(i):
        return left + pw * (i / max(T - 1, 1))

    def py(v):
        return top + ph * (1.0 - v / ymax)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
        f'<text x="{left + pw / 2}" y="{H - 12}" text-anchor="middle" font-size="13">round</text>',
        f'<text x="18" y="{top + ph / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 18 {top + ph / 2})">cumulative regret</text>',
        f'<text x="{left - 6}" y="{top + 4}" text-anchor="end" font-size="11">{ymax:.3g}</text>',
        f'<text x="{left - 6}" y="{top + ph + 4}" text-anchor="end" font-size="11">0</text>',
        f'<text x="{left + pw}" y="{top + ph + 16}" text-anchor="end" font-size="11">{T}</text>',
    ]
    if title:
        out.append(f'<text x="{left + pw / 2}" y="18" text-anchor="middle" font-size="14">{title}</text>')
    for k, (label, m, s) in enumerate(curves):
        color = _PALETTE[k % len(_PALETTE)]
        upper = [f"{px(i):.2f},{py(m[i] + s[i]):.2f}" for i in range(m.size)]
        lower = [f"{px(i):.2f},{py(max(m[i] - s[i], 0.0)):.2f}" for i in range(m.size)][::-1]
        out.append(f'<polygon class="band" points="{" ".join(upper + lower)}" fill="{color}" '
                   f'fill-opacity="0.15" stroke="none"/>')
        pts = " ".join(f"{px(i):.2f},{py(m[i]):.2f}" for i in range(m.size))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = top + 14 + 18 * k
        out.append(f'<line x1="{left + pw + 12}" y1="{ly - 4}" x2="{left + pw + 32}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{left + pw + 36}" y="{ly}" font-size="12">{_escape(label)}</text>')
    out.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(out) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc}") from exc


def _escape(text):
    return str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def min_c1(policy, T: int) -> float:
    """Smallest ``P{w >= 1}`` over the horizon of a Generic-GP policy."""
    if not isinstance(policy, GenericGP):
        raise TypeError("only Generic-GP policies have an exploration distribution")
    return min(d.c1() for d in policy.schedule.distributions(T))

import math

import numpy as np
import pytest

from generic_gp.environments import Environment
from generic_gp.harness import (
    ExperimentError,
    RunConfig,
    RunResult,
    build_environment,
    emit_csv,
    emit_plot,
    loglog_slope,
    min_c1,
    pseudo_regret,
    regret_growth,
    resolve,
    run_experiment,
    run_single,
)
from generic_gp.kernels import linear, rbf
from generic_gp.policies import preset
from generic_gp.posterior import ConfidenceParams

TWO_ARMS = Environment("two-arms", np.eye(2), [0.6, 0.3])


def ucb_trace_oracle(f, T, R, D):
    """Simple-UCB on orthonormal arms with the linear kernel and no noise.

    With Q_i pulls of arm i the posterior is diagonal:
    mean_i = Q_i f_i / (Q_i + 1), weighted norm 1/sqrt(1 + Q_i),
    log det = sum log(1 + Q_i).
    """
    Q = [0] * len(f)
    picks = []
    for _ in range(T):
        logdet = sum(math.log1p(q) for q in Q)
        g = math.sqrt(2 * R * R * (math.log(2) + 0.5 * logdet)) + D
        scores = [Q[i] * f[i] / (Q[i] + 1) + g / math.sqrt(1 + Q[i]) for i in range(len(f))]
        best = max(range(len(f)), key=lambda i: (scores[i], -i))
        picks.append(best)
        Q[best] += 1
    return picks


def test_single_arm_has_zero_regret():
    env = Environment("one", [[0.3, 0.1]], [0.8], noise_sigma=0.01)
    recs = run_single(RunConfig(env, "simple-gaussian", rbf(0.4), T=30, n_seeds=1), 0)
    assert all(r.arm_index == 0 and r.instant_regret == 0.0 for r in recs)
    assert recs[-1].cumulative_regret == 0.0


def test_two_arm_trace_matches_closed_form():
    cfg = RunConfig(TWO_ARMS, "simple-ucb", linear(), T=60, n_seeds=1, R=0.1, D=1.0)
    recs = run_single(cfg, 0)
    assert [r.arm_index for r in recs] == ucb_trace_oracle([0.6, 0.3], 60, 0.1, 1.0)
    assert all(r.reward == TWO_ARMS.values[r.arm_index] for r in recs)


def test_simple_ucb_seed_free_on_noise_free_env():
    cfg = RunConfig(TWO_ARMS, "simple-ucb", linear(), T=40, n_seeds=3, R=0.1, D=1.0)
    res = run_experiment(cfg)
    arms = [[r.arm_index for r in recs] for recs in res.per_seed]
    assert arms[0] == arms[1] == arms[2]


def test_pseudo_regret_recomputed_from_log():
    cfg = RunConfig("holder-table", "simple-bernoulli", T=80, n_seeds=1)
    recs = run_single(cfg, 4)
    env = build_environment("holder-table", 4)
    online = np.array([r.cumulative_regret for r in recs])
    np.testing.assert_array_equal(pseudo_regret(env, [r.arm_index for r in recs]), online)
    assert all(r.instant_regret >= 0 for r in recs)


def test_runs_are_deterministic():
    cfg = RunConfig("ackley", "simple-gaussian", T=50, n_seeds=2, master_seed=7)
    a, b = run_experiment(cfg), run_experiment(cfg)
    np.testing.assert_array_equal(a.cumulative, b.cumulative)
    assert a.seeds == [7, 8]


def test_parallel_equals_serial():
    cfg = RunConfig("holder-table", "gp-ts", T=40, n_seeds=3)
    np.testing.assert_array_equal(run_experiment(cfg, workers=1).cumulative,
                                  run_experiment(cfg, workers=3).cumulative)


def test_environment_differs_by_seed_but_not_by_policy():
    a = build_environment("ackley", 0)
    b = build_environment("ackley", 1)
    assert not np.array_equal(a.candidates, b.candidates)
    np.testing.assert_array_equal(a.candidates, build_environment("ackley", 0).candidates)


def test_resolve_defaults():
    env = build_environment("holder-table", 0)
    env2, kernel, params = resolve(RunConfig("holder-table"), env)
    assert kernel == rbf(0.4)
    assert params == ConfidenceParams(0.01, float(np.max(np.abs(env.values))))
    lb = build_environment("lower-bound:2", T=1000)
    _, kernel, params = resolve(RunConfig("lower-bound:2"), lb)
    assert kernel == linear() and params == ConfidenceParams(1.0, 1.0)
    env3, _, _ = resolve(RunConfig("holder-table", noise_sigma=0.5), env)
    assert env3.noise_sigma == 0.5


def test_build_environment_errors(tmp_path):
    with pytest.raises(ValueError):
        build_environment("rosenbrock")
    with pytest.raises(ValueError):
        build_environment("perovskite")
    assert build_environment("hartmann:20").n_arms == 20


def test_failed_seed_is_named():
    bad = Environment("bad", [[0.9, 0.9], [0.0, 0.0]], [1.0, 0.0])  # outside the unit ball
    with pytest.raises(ExperimentError, match="seed 3"):
        run_experiment(RunConfig(bad, "simple-ucb", linear(), T=5, n_seeds=2, master_seed=3))


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(T=0)
    with pytest.raises(ValueError):
        RunConfig(n_seeds=0)


# -- probes -------------------------------------------------------------------------


def test_regret_growth_and_slope():
    t = np.arange(1, 1001)
    first, last = regret_growth(np.sqrt(t))
    assert first == pytest.approx(10.0) and last == pytest.approx(math.sqrt(1000) - math.sqrt(900))
    assert loglog_slope(3 * np.sqrt(t)) == pytest.approx(0.5, abs=1e-12)
    assert loglog_slope(2.0 * t) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        loglog_slope(np.zeros(1000))


def test_min_c1():
    p = preset("simple-bernoulli", ConfidenceParams(0.1, 1.0), 100)
    assert min_c1(p, 100) == 0.25
    with pytest.raises(TypeError):
        min_c1(preset("gp-ts", ConfidenceParams(0.1, 1.0), 100), 100)


# -- output ----------------------------------------------------------------------------


def tiny_result():
    recs = run_single(RunConfig(TWO_ARMS, "simple-ucb", linear(), T=3, n_seeds=1, R=0.1, D=1.0), 0)
    return RunResult(RunConfig(TWO_ARMS, "simple-ucb", T=3, n_seeds=2), [0, 1], [recs, recs])


def test_emit_csv(tmp_path):
    res = tiny_result()
    path = tmp_path / "out.csv"
    emit_csv(res, path, per_seed=True)
    lines = path.read_text().splitlines()
    assert lines[0] == "round,mean_cum_regret,std_cum_regret,seed_0,seed_1"
    assert len(lines) == 4
    cum = res.cumulative[0]
    assert lines[1] == f"1,{cum[0]:.12f},0.000000000000,{cum[0]:.12f},{cum[0]:.12f}"
    with pytest.raises(OSError):
        emit_csv(res, tmp_path / "missing" / "x.csv")


def test_population_std():
    res = tiny_result()
    res.per_seed[1] = [r._replace(cumulative_regret=r.cumulative_regret + 2.0) for r in res.per_seed[1]]
    np.testing.assert_allclose(res.std, 1.0)


def test_emit_plot(tmp_path):
    res = tiny_result()
    path = tmp_path / "p.svg"
    emit_plot([("ucb <a>", res), ("again", res)], path, title="demo")
    svg = path.read_text()
    assert svg.startswith("<svg") and svg.count('class="band"') == 2
    assert svg.count("<polyline") == 2 and "ucb &lt;a&gt;" in svg
    assert "cumulative regret" in svg and ">round<" in svg
    with pytest.raises(ValueError):
        emit_plot([], path)

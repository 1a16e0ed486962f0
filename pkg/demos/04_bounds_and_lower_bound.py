"""Explicit regret bound and the basis-arm lower-bound instance."""
import warnings

from generic_gp import ConfidenceParams, RunConfig, run_experiment
from generic_gp.bounds import info_gain_greedy, regret_bound_for_schedule
from generic_gp.environments import make_lower_bound, make_synthetic
from generic_gp.harness import loglog_slope, min_c1
from generic_gp.kernels import rbf
from generic_gp.policies import preset

spacer = "_" * 60

# %% greedy information gain on a 50-arm Ackley instance
env = make_synthetic("ackley", rng=0)
for T in (10, 100, 1000):
    print(f"T = {T:5d}   greedy gamma = {info_gain_greedy(rbf(0.4), env.candidates, T):.3f}")
print(spacer)

# %% regret bound for each Generic-GP preset at T = 1000
T = 1000
gamma = info_gain_greedy(rbf(0.4), env.candidates, T)
params = ConfidenceParams(R=0.01, D=float(abs(env.values).max()))
for name in ("simple-ucb", "simple-bernoulli", "simple-gaussian", "simple-categorical"):
    sched = preset(name, params, T).schedule
    print(f"{name:20s} bound = {regret_bound_for_schedule(sched, T, gamma, params.R, params.D):10.1f}")
print(spacer)

# %% lower-bound instance: regret must grow at least like Delta * T * c1
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    lb = make_lower_bound(2, T)
    res = run_experiment(RunConfig("lower-bound:2", "simple-gaussian", T=T, n_seeds=10))
delta = lb.info["instance"].Delta
floor = 0.25 * delta * T * min_c1(preset("simple-gaussian", ConfidenceParams(1, 1), T), T)
print(f"Delta = {delta:.5f}")
print(f"mean regret at T = {res.mean[-1]:.3f}, floor = {floor:.3f}")
print(f"log-log slope over [100, {T}] = {loglog_slope(res.mean, 100, T):.3f}")

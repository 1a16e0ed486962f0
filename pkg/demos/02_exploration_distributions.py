"""Exploration laws for the scalar weight w_t and their C constants."""
import numpy as np

from generic_gp.exploration import (
    Bernoulli,
    Categorical,
    ConstantSchedule,
    Mixture,
    StdGaussian,
    SwitchSchedule,
    analytic_c_bounds,
    monte_carlo_c,
)

spacer = "_" * 60
rng = np.random.default_rng(1)

# %% C1 = P{w >= 1}: exact value against 10^5 draws
for dist in [Bernoulli(1.0), Bernoulli(0.25), StdGaussian, Categorical.uniform(4), Mixture(0.5, 1.0)]:
    w = dist.sample(rng, 100_000)
    print(f"{str(dist):45s} c1 = {dist.c1():.4f}   empirical = {np.mean(w >= 1):.4f}")
print(spacer)

# %% C2 and C3 over a horizon: closed-form bound against Monte-Carlo
T = 1000
schedules = {
    "simple-ucb": ConstantSchedule(Bernoulli(1.0)),
    "simple-bernoulli": SwitchSchedule(Bernoulli(0.5), Bernoulli(0.25), T // 2 + 1),
    "simple-gaussian": ConstantSchedule(StdGaussian),
    "simple-categorical": ConstantSchedule(Categorical.uniform(4)),
    "mixture(0.5, 1)": ConstantSchedule(Mixture(0.5, 1.0)),
}
print(f"{'schedule':20s} {'C2 bound':>9s} {'C2 MC':>9s} {'C3 bound':>9s} {'C3 MC':>9s}")
for name, sched in schedules.items():
    c2, c3 = analytic_c_bounds(sched, T)
    mc = monte_carlo_c(sched, T, 1000, rng)
    print(f"{name:20s} {c2:9.3f} {mc.c2:9.3f} {c3:9.3f} {mc.c3:9.3f}")
print(spacer)

# %% Gaussian C2 grows like sqrt(log T)
for T in (10, 100, 1000, 10000):
    print(f"T = {T:6d}   C2 bound for N(0,1) = {analytic_c_bounds(ConstantSchedule(StdGaussian), T)[0]:.3f}")

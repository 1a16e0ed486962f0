"""Kernels and the incremental GP posterior.

Builds a posterior one observation at a time and compares it with a single
dense solve of (K + I).
"""
import numpy as np

from generic_gp import ConfidenceParams, PosteriorState, gram, matern, rbf
from generic_gp.kernels import cross

spacer = "_" * 60
rng = np.random.default_rng(0)

# %% kernels are bounded by 1 on the unit ball
X = rng.uniform(-0.5, 0.5, size=(5, 2))
print("RBF(0.4) Gram matrix of five points")
print(np.round(gram(rbf(0.4), X), 3))
print("Matern(3/2, 0.4) Gram matrix")
print(np.round(gram(matern(1.5, 0.4), X), 3))
print(spacer)

# %% feed noisy observations of f(x) = sin(3 x_1) one at a time
f = lambda P: np.sin(3 * np.atleast_2d(P)[:, 0])
kernel = rbf(0.4)
state = PosteriorState(kernel)
pts = rng.uniform(-0.7, 0.7, size=(30, 2))
for x in pts:
    state.update(x, float(f(x)[0] + 0.01 * rng.standard_normal()))

q = np.array([[0.0, 0.0], [0.3, -0.2], [0.6, 0.1]])
print("posterior after", state.t, "observations")
print("  mean        ", np.round(state.mean(q), 4))
print("  true f      ", np.round(f(q), 4))
print("  weighted norm", np.round(state.weighted_norm(q), 4))
print("  log det(Vbar) =", round(state.log_det(), 4))
print(spacer)

# %% the same numbers from one dense solve
A = gram(kernel, pts) + np.eye(len(pts))
Kq = cross(kernel, q, pts)
dense_mean = Kq @ np.linalg.solve(A, state.rewards)
print("dense mean   ", np.round(dense_mean, 4))
print("max |incremental - dense| =", np.abs(dense_mean - state.mean(q)).max())
print(spacer)

# %% the confidence width g used by every policy
params = ConfidenceParams(R=0.01, D=1.0)
print("g(q) =", np.round(state.g_value(params, q), 4))
print("f_tilde with w = 1 (UCB) :", np.round(state.f_tilde(params, 1.0, q), 4))
print("f_tilde with w = 0 (greedy):", np.round(state.f_tilde(params, 0.0, q), 4))

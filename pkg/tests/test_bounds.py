import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from generic_gp.bounds import (
    BoundInputs,
    info_gain,
    info_gain_exhaustive,
    info_gain_greedy,
    regret_bound_for_schedule,
    regret_bound_generic,
)
from generic_gp.exploration import Bernoulli, ConstantSchedule, StdGaussian, analytic_c_bounds
from generic_gp.kernels import linear, matern, rbf
from oracles import random_ball


def bound_scalar(T, g, R, D, C2, C3):
    a = math.sqrt(2 * R * R * g + 2 * R * R * math.log(2)) + D
    b = math.sqrt(max(2 * R * R * g + 2 * R * R * math.log(2 * T * D * D), 0.0)) + D
    return 2 * (C2 + 2 * C3) * a * math.sqrt(T * g) + 2 * b * math.sqrt(T * g) + 1


def test_bound_example():
    b = regret_bound_generic(BoundInputs(100, 2.0, 0.1, 1.0, 1.0, 2.0))
    assert b == pytest.approx(214.333, abs=1e-3)
    assert b == pytest.approx(bound_scalar(100, 2.0, 0.1, 1.0, 1.0, 2.0), rel=1e-14)


def test_bound_zero_gain_is_one():
    assert regret_bound_generic(BoundInputs(1, 0.0, 0.0, 0.1, 0.0, 0.0)) == 1.0


def test_bound_clamps_negative_radicand():
    # 2 T D^2 < 1 makes the log negative enough to push the radicand below 0
    inp = BoundInputs(1, 0.01, 1.0, 0.1, 1.0, 2.0)
    assert math.isfinite(regret_bound_generic(inp))


def test_bound_inputs_validation():
    with pytest.raises(ValueError):
        BoundInputs(0, 1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        BoundInputs(10, -1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        BoundInputs(10, 1, 1, 0, 1, 1)


def test_bound_for_schedule():
    T, g = 500, 12.0
    sched = ConstantSchedule(StdGaussian)
    C2, C3 = analytic_c_bounds(sched, T)
    assert regret_bound_for_schedule(sched, T, g, 0.01, 2.0) == pytest.approx(
        bound_scalar(T, g, 0.01, 2.0, C2, C3), rel=1e-14
    )


@settings(max_examples=100, deadline=None)
@given(
    st.integers(1, 5000),
    st.floats(0, 100),
    st.floats(0, 3),
    st.floats(0.01, 20),
    st.floats(0, 10),
    st.floats(0, 50),
    st.sampled_from(["T", "gamma_T", "R", "D", "C2", "C3"]),
)
def test_bound_monotone(T, g, R, D, C2, C3, which):
    base = dict(T=T, gamma_T=g, R=R, D=D, C2=C2, C3=C3)
    bumped = dict(base)
    bumped[which] = base[which] + (1 if which == "T" else 0.1)
    lo = regret_bound_generic(BoundInputs(**base))
    hi = regret_bound_generic(BoundInputs(**bumped))
    assert hi >= lo * (1 - 1e-12)


# -- information gain -------------------------------------------------------------


def test_info_gain_examples():
    assert info_gain(rbf(1.0), []) == 0.0
    assert info_gain(rbf(1.0), [[0.0, 0.0]]) == pytest.approx(0.5 * math.log(2), abs=1e-15)
    # identical points under a unit-diagonal kernel: det(I + 11^T) = 1 + n
    assert info_gain(rbf(0.3), [[0.1, 0.1]] * 4) == pytest.approx(0.5 * math.log(5), abs=1e-12)


def test_info_gain_linear_feature_space():
    rng = np.random.default_rng(0)
    X = random_ball(rng, 20, 3)
    want = 0.5 * np.linalg.slogdet(np.eye(3) + X.T @ X)[1]
    assert info_gain(linear(), X) == pytest.approx(want, abs=1e-10)


def test_greedy_exact_on_orthonormal_arms():
    # ½ Σ log(1 + n_i) is maximised by the most balanced counts
    for d, T in [(3, 7), (3, 1000), (4, 10)]:
        counts = [T // d + (1 if i < T % d else 0) for i in range(d)]
        exact = 0.5 * sum(math.log1p(c) for c in counts)
        gain, picks = info_gain_greedy(linear(), np.eye(d), T, return_indices=True)
        assert gain == pytest.approx(exact, abs=1e-9)
        assert sorted(np.bincount(picks, minlength=d)) == sorted(counts)


def test_greedy_matches_direct_log_det():
    rng = np.random.default_rng(2)
    C = random_ball(rng, 15, 2)
    gain, picks = info_gain_greedy(rbf(0.4), C, 25, return_indices=True)
    assert gain == pytest.approx(info_gain(rbf(0.4), C[picks]), abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([rbf(0.3), rbf(1.0), matern(1.5, 0.5), linear()]),
    st.integers(2, 4),
    st.integers(1, 4),
    st.integers(0, 2**31),
)
def test_greedy_against_exhaustive(kernel, n, T, seed):
    rng = np.random.default_rng(seed)
    C = random_ball(rng, n, 2)
    exact = info_gain_exhaustive(kernel, C, T)
    greedy = info_gain_greedy(kernel, C, T)
    assert greedy <= exact + 1e-9
    assert greedy >= (1 - 1 / math.e) * exact - 1e-9
    for seq in itertools.product(range(n), repeat=T):
        assert info_gain(kernel, C[list(seq)]) <= exact + 1e-9


def test_exhaustive_guard_and_greedy_errors():
    with pytest.raises(ValueError):
        info_gain_exhaustive(rbf(1.0), np.zeros((10, 2)), 6)
    with pytest.raises(ValueError):
        info_gain_greedy(rbf(1.0), np.zeros((3, 2)), 0)

"""Kernelized bandits with scalar exploration distributions (Generic-GP)."""

from .kernels import KernelSpec, DomainError, rbf, matern, linear, eval_kernel, gram, parse_kernel
from .posterior import ConfidenceParams, PosteriorState, NumericalDegeneracyError
from .exploration import (
    Bernoulli,
    Gaussian,
    StdGaussian,
    Categorical,
    Mixture,
    ConstantSchedule,
    SwitchSchedule,
    AdaptiveSchedule,
    analytic_c_bounds,
    monte_carlo_c,
    parse_exploration,
)
from .policies import GenericGP, IgpUcb, GpTs, select_arm, preset, parse_policy, PRESETS
from .environments import Environment, make_synthetic, make_lower_bound, load_perovskite, step
from .bounds import BoundInputs, info_gain_greedy, regret_bound_generic, regret_bound_for_schedule
from .harness import RunConfig, RunResult, run_single, run_experiment, emit_csv, emit_plot

__version__ = "0.1.0"

"""Command line entry point: ``generic-gp <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys

from .bounds import info_gain_greedy, regret_bound_for_schedule
from .exploration import analytic_c_bounds
from .harness import (
    RunConfig,
    build_environment,
    emit_csv,
    emit_plot,
    loglog_slope,
    min_c1,
    resolve,
    run_experiment,
)
from .kernels import parse_kernel
from .policies import PRESETS, GenericGP, parse_policy
from .posterior import ConfidenceParams

_POLICY_HEADS = set(PRESETS) | {"ucb", "gaussian", "bernoulli", "categorical", "mixture"}


def split_policies(text: str) -> list[str]:
    """Split ``p1,p2,...`` where individual specs may themselves contain commas."""
    out = []
    for piece in text.split(","):
        head = piece.strip().split(":")[0].lower()
        if head in _POLICY_HEADS or not out:
            out.append(piece.strip())
        else:
            out[-1] += "," + piece.strip()
    return [p for p in out if p]


def _add_common(p, rounds_default=1000):
    p.add_argument("--env", default="ackley", help="holder-table|cross-in-tray|ackley|hartmann[:n], perovskite:<csv>, lower-bound:<d>")
    p.add_argument("--kernel", default=None, help="rbf:<ls>, matern:<nu>:<ls> or linear")
    p.add_argument("--rounds", type=int, default=rounds_default)
    p.add_argument("--seeds", type=int, default=25)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--D", type=float, default=None)
    p.add_argument("--arms", type=int, default=50)


def _config(args, env, policy):
    kernel = parse_kernel(args.kernel) if args.kernel else None
    return RunConfig(env, policy, kernel, args.rounds, args.seeds, args.master_seed, args.R, args.D, args.arms)


def _cmd_run(args):
    cfg = _config(args, args.env, args.policy)
    res = run_experiment(cfg)
    emit_csv(res, args.out_csv, per_seed=args.per_seed)
    if args.out_svg:
        emit_plot([(args.policy, res)], args.out_svg, title=args.env)
    print(f"{args.policy}: mean cumulative regret at T={cfg.T}: {res.mean[-1]:.6g} (std {res.std[-1]:.6g})")


def _cmd_compare(args):
    results = []
    for spec in split_policies(args.policies):
        res = run_experiment(_config(args, args.env, spec))
        results.append((spec, res))
        print(f"{spec:28s} {res.mean[-1]:12.6g} +/- {res.std[-1]:.6g}")
        if args.out_csv_prefix:
            emit_csv(res, f"{args.out_csv_prefix}{spec.replace(':', '_').replace(',', '_')}.csv")
    if args.out_svg:
        emit_plot(results, args.out_svg, title=args.env)


def _gamma(args, T):
    if args.gamma != "greedy":
        return float(args.gamma)
    env = build_environment(args.env, args.master_seed, args.arms, T)
    cfg = RunConfig(args.env, "simple-ucb", parse_kernel(args.kernel) if args.kernel else None, T)
    _, kernel, _ = resolve(cfg, env)
    return info_gain_greedy(kernel, env.candidates, T)


def _cmd_bound(args):
    R = 0.01 if args.R is None else args.R
    D = 1.0 if args.D is None else args.D
    policy = parse_policy(args.policy, ConfidenceParams(R, D), args.rounds)
    if not isinstance(policy, GenericGP):
        raise ValueError(f"no closed-form bound for baseline policy {args.policy!r}")
    print("T,gamma,C2,C3,bound")
    horizons = sorted({max(1, args.rounds // k) for k in (8, 4, 2, 1)})
    for T in horizons:
        sched = policy.schedule
        g = _gamma(args, T)
        C2, C3 = analytic_c_bounds(sched, T)
        b = regret_bound_for_schedule(sched, T, g, R, D)
        print(f"{T},{g:.6g},{C2:.6g},{C3:.6g},{b:.6g}")


def _cmd_info_gain(args):
    env = build_environment(args.env, args.master_seed, args.arms, args.rounds)
    cfg = RunConfig(args.env, "simple-ucb", parse_kernel(args.kernel) if args.kernel else None, args.rounds)
    _, kernel, _ = resolve(cfg, env)
    print(f"{info_gain_greedy(kernel, env.candidates, args.rounds):.10g}")


def _cmd_lower_bound(args):
    R = 1.0 if args.R is None else args.R
    D = 1.0 if args.D is None else args.D
    cfg = RunConfig(f"lower-bound:{args.dim}", args.policy, None, args.rounds, args.seeds,
                    args.master_seed, R, D)
    env = build_environment(cfg.env_spec, cfg.master_seed, T=cfg.T, R=R, D=D)
    delta = env.info["instance"].Delta
    res = run_experiment(cfg)
    policy = parse_policy(args.policy, ConfidenceParams(R, D), args.rounds)
    floor = 0.25 * delta * args.rounds * min_c1(policy, args.rounds)
    final = float(res.mean[-1])
    print(f"Delta={delta:.6g}")
    print(f"mean_cum_regret={final:.6g} floor={floor:.6g} {'PASS' if final >= floor else 'FAIL'}")
    if args.rounds >= 200:
        slope = loglog_slope(res.mean, 100, args.rounds)
        print(f"loglog_slope={slope:.4f} {'PASS' if slope >= 0.4 else 'FAIL'}")
    if args.out_csv:
        emit_csv(res, args.out_csv)


def build_parser():
    parser = argparse.ArgumentParser(prog="generic-gp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one policy over many seeds")
    _add_common(p)
    p.add_argument("--policy", default="simple-ucb")
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-svg", default=None)
    p.add_argument("--per-seed", action="store_true", help="add one column per seed")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("compare", help="overlay several policies on one environment")
    _add_common(p)
    p.add_argument("--policies", default=",".join(PRESETS))
    p.add_argument("--out-svg", default=None)
    p.add_argument("--out-csv-prefix", default=None)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("bound", help="print the explicit regret bound table")
    _add_common(p)
    p.add_argument("--policy", default="simple-ucb")
    p.add_argument("--gamma", default="greedy", help="numeric value or 'greedy'")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("info-gain", help="greedy information gain estimate")
    _add_common(p)
    p.set_defaults(func=_cmd_info_gain)

    p = sub.add_parser("lower-bound", help="run the basis-arm linear lower-bound instance")
    p.add_argument("--d", dest="dim", type=int, default=2)
    p.add_argument("--rounds", type=int, default=1000)
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--D", type=float, default=None)
    p.add_argument("--policy", default="simple-gaussian")
    p.add_argument("--seeds", type=int, default=25)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=_cmd_lower_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:  # one-line reason, nonzero exit
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

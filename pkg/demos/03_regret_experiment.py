"""Multi-seed regret comparison on the Holder Table function.

Writes holder_compare.svg and one CSV per policy into the working directory.
"""
from generic_gp import PRESETS, RunConfig, emit_csv, emit_plot, run_experiment
from generic_gp.harness import regret_growth

spacer = "_" * 60
T, seeds = 300, 5

results = []
for name in PRESETS:
    res = run_experiment(RunConfig("holder-table", name, T=T, n_seeds=seeds))
    first, last = regret_growth(res.mean, 50)
    print(f"{name:20s} R_T = {res.mean[-1]:8.2f} +/- {res.std[-1]:6.2f}   "
          f"growth first 50 = {first:7.2f}, last 50 = {last:7.2f}")
    emit_csv(res, f"holder_{name}.csv")
    results.append((name, res))
print(spacer)

emit_plot(results, "holder_compare.svg", title="Holder Table, 50 arms")
print("wrote holder_compare.svg")

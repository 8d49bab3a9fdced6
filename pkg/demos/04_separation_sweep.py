# # Separation of optimal points
#
# Optimize for a range of N and look at the minimal distance scaled by
# N^(1/d). If the points are well separated the scaled value stays bounded
# below as N grows.

from rieszsep.analysis import separation_slope, separation_sweep
from rieszsep.io import report_to_json
from rieszsep.optimizer import OptimizerConfig

report = separation_sweep(2, 1.0, [10, 20, 40, 80], OptimizerConfig(restarts=4))

print(f"{'N':>4} {'energy':>14} {'delta':>9} {'scaled':>8} {'packing ratio':>14}")
for r in report.records:
    print(f"{r.n:4d} {r.best_energy:14.6f} {r.min_distance:9.5f} {r.scaled_separation:8.4f} {r.packing_ratio:14.4f}")

# The scaled separation is flat in N; a log-log slope near zero says so.

print("slope:", separation_slope(report))
print("empirical lower bound A:", report.empirical_A)

# Implied constants of the potential estimates, one per N. They should not
# drift much.

for r in report.records:
    print(r.n, round(r.lemma2_C, 4), round(r.lemma4_C, 4), round(r.exterior_C, 4), r.lemma6_pass)

c = report.constants
print("gamma:", c.gamma, "beta (limit):", c.beta_limit)

# The same report as JSON, as written by `rieszsep sweep`:

print(report_to_json(report)[:400], "...")

"""
How fast is the word problem?
=============================

Each split at least halves the words, so the total work is n log n at
most.  On reduced random words the measured time is close to linear.
"""

from grigorchuk.bench import run_scaling

report = run_scaling(1 << 18, reps=3)
for n, cpu, wall in report.rows:
    print(f"{n:>8} {cpu * 1e3:9.3f} ms  {cpu / n * 1e9:7.1f} ns/letter")
print("doubling ratios", [round(r, 2) for r in report.ratios])
print("log-log slope", round(report.loglog_slope, 3))

# %%
# Identity words that force the solver all the way down.
rel = run_scaling(1 << 18, reps=3, family="relator")
print("relator log-log slope", round(rel.loglog_slope, 3))

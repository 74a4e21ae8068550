"""How the median mu of variant 0 grows with n on 3-regular graphs.

Fits ``c * log2(n)`` and ``c * log2(n)**2`` to the medians and prints the
ratio series; a flat series means the model tracks the data.
"""

from cyclebasis.experiments import TrialSchedule, fit_coefficient, median_points, run_schedule

sizes = [32, 64, 128, 256, 512, 1024]
rows, _ = run_schedule(TrialSchedule([(n, 3, 30) for n in sizes]), [0, 3], base_seed=0)

for v in (0, 3):
    pts = median_points(rows, v, 3)
    print(f"variant {v}: medians {[m for _, m in pts]}")
    for model in ("log", "log2"):
        fit = fit_coefficient(pts, model)
        print(f"  {model:>4}: c={fit.c:.3f} ratios {[round(r, 2) for r in fit.ratios]}")

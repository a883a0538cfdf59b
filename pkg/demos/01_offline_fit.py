"""
Offline rectangular fit
=======================

Four solvers find the same optimal rectangle on a small instance: the
exhaustive grid, the snake-order sweep, and the linear two-scan method.
"""

from rectfit import FitConfig, brute_force_fit, iterative_fit, linear_fit, make_samples

# Scores 1..5 with linear losses. Negative loss means the sample "wants" the
# high level q1, positive means it wants q0.
samples = make_samples([1, 2, 3, 4, 5], [2, -3, 1, -2, 4])
config = FitConfig(q0=0, q1=1)

for solve in (brute_force_fit, iterative_fit, linear_fit):
    report = solve(samples, config)
    f = report.fit
    print(f"{solve.__name__:16s} (x1, x2] = ({f.x1}, {f.x2}]  "
          f"L0={f.l0} L1={f.l1} L2={f.l2}  loss={report.loss}")

# The prefix scan tracks the best 0-1 step for every prefix.
from rectfit import prefix_step_scan

scan = prefix_step_scan(samples)
print("prefix Q0 mass:", scan.low[1:])
print("prefix Q1 mass:", scan.high[1:])

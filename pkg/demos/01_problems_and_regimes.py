"""Tour of the benchmark problems: exact solutions, layer structure,
characteristic roots and regime classification.

Run:  python3 demos/01_problems_and_regimes.py
"""

import numpy as np

from papinn import (PerturbationPair, characteristic_roots, classify_regime,
                    exact_solution, get_problem)
from papinn.problems import analytic_residual

ONE = lambda x: np.ones_like(x)

print("Regimes for a sweep of parameter pairs")
print(f"{'eps1':>10} {'eps2':>10}  regime")
for e1, e2 in [(1e-4, 1.0), (1e-6, 1e-2), (1e-6, 1e-4),
               (1e-2, 1e-3), (1e-1, 1e-2)]:
    label = classify_regime(PerturbationPair(e1, e2))
    print(f"{e1:>10.0e} {e2:>10.0e}  {label.value}")

print()
print("Characteristic layer rates (unit coefficients)")
print(f"{'eps1':>10} {'eps2':>10} {'mu_L':>12} {'mu_R':>12}")
for e1, e2 in [(1e-1, 1e-2), (1e-2, 1e-3), (1e-3, 1e-4)]:
    mu_l, mu_r = characteristic_roots(PerturbationPair(e1, e2), ONE, ONE)
    print(f"{e1:>10.0e} {e2:>10.0e} {mu_l:>12.4f} {mu_r:>12.4f}")

# The exact solutions develop boundary layers as the parameters shrink:
# sample Example 1 near the left end point for two stiffness levels.
print()
print("Example 1 exact solution near x = 0")
spec = get_problem("ex1")
xs = [0.0, 0.001, 0.01, 0.1, 0.5]
for e1, e2 in [(1e-1, 1e-2), (1e-3, 1e-4)]:
    pair = PerturbationPair(e1, e2)
    vals = " ".join(f"{exact_solution(spec, [x], pair):9.5f}" for x in xs)
    print(f"eps=({e1:.0e},{e2:.0e})  u({xs}) = {vals}")

# Every registered problem's closed form satisfies its own PDE: the
# analytic residual vanishes to rounding at random interior points.
print()
print("Analytic residual of each exact solution (100 interior points)")
rng = np.random.default_rng(0)
pair = PerturbationPair(1e-2, 1e-3)
for pid in ["ex1", "ex2", "ex3", "ex4", "ex5", "ex6"]:
    spec = get_problem(pid)
    pts = rng.uniform(0.05, 0.95, (100, spec.input_dim))
    res = analytic_residual(spec, pts, pair)
    print(f"{pid}: max |residual| = {np.max(np.abs(res)):.2e}")

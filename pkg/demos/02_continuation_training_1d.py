"""Parameter-continuation training on Example 1.

Walks (eps1, eps2) from the benign start (0.3, 0.1) down to a stiff
target in two phases, warm-starting the network at every step, and
prints the per-step history.  Uses a reduced budget so the demo
finishes in about a minute; raise `iters` for tighter errors.

Run:  python3 demos/02_continuation_training_1d.py
"""

from papinn import (ContinuationConfig, NetworkShape, PerturbationPair,
                    Schedule, evaluate, get_problem, run_pa_pinn)
from papinn.training import LossWeights, OptimConfig

target = (1e-2, 1e-3)
spec = get_problem("ex1")

cfg = ContinuationConfig(
    schedule1=Schedule("linear", 0.3, target[0], steps=1),
    schedule2=Schedule("linear", 0.1, target[1], steps=1),
    shape=NetworkShape(1, 4, 16),
    n_interior=512, n_boundary=2,
    weights=LossWeights(),
    inner_budget=OptimConfig(max_iters=200),
    inner_restarts=1,
    refine_pool=1024, refine_k=64,
    seed=0,
)

print(f"continuation to eps = {target} on {spec.pid}")
params, history = run_pa_pinn(spec, cfg)

print(f"{'step':>4} {'eps1':>9} {'eps2':>9} {'loss':>11} {'E2':>11} {'pts':>6}")
for r in history.records:
    print(f"{r.step:>4} {r.eps1:>9.3g} {r.eps2:>9.3g} "
          f"{r.inner_loss:>11.3e} {r.e2:>11.3e} {r.n_interior:>6}")

report = evaluate(params, spec, PerturbationPair(*target))
print(f"\nfinal: E2 = {report.e2:.3e}, Einf = {report.e_inf:.3e} "
      f"on a {report.grid_size}-point grid "
      f"({history.total_iterations} optimizer iterations total)")

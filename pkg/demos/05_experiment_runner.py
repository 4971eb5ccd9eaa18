"""The experiment runner and its on-disk artifacts.

Runs one small continuation experiment through the same code path the
CLI uses and walks through the files it writes: the error table, the
continuation history, the loss curve, the solution profile and the
checkpoint.  Everything is deterministic: rerunning this script
reproduces the CSV files byte for byte.

Run:  python3 demos/05_experiment_runner.py
"""

import os

from papinn import ExperimentConfig, evaluate, get_problem, load_checkpoint
from papinn.problems import PerturbationPair
from papinn.reporting import run_experiment

out = os.path.join("out", "demo_experiment")
cfg = ExperimentConfig(
    problem="ex1", eps1=1e-2, eps2=1e-3, method="pa_pinn",
    schedule_steps=0, hidden_layers=4, hidden_width=16,
    n_interior=256, n_boundary=2, iters=200,
    refine_pool=512, refine_k=32, seed=0, out_dir=out,
)

report = run_experiment(cfg)
print(f"pa_pinn on ex1 at (1e-2, 1e-3): E2 = {report.e2:.3e}, "
      f"Einf = {report.e_inf:.3e}")

print(f"\nartifacts under {out}/:")
for name in sorted(os.listdir(out)):
    path = os.path.join(out, name)
    print(f"  {name} ({os.path.getsize(path)} bytes)")

print("\nhead of history.csv:")
with open(os.path.join(out, "history.csv")) as fh:
    for line in list(fh)[:4]:
        print(f"  {line.rstrip()}")

# The checkpoint restores the trained network exactly.
params = load_checkpoint(os.path.join(out, "model.ckpt"))
again = evaluate(params, get_problem("ex1"), PerturbationPair(1e-2, 1e-3))
print(f"\nreloaded checkpoint: E2 = {again.e2:.3e} (identical: {again.e2 == report.e2})")

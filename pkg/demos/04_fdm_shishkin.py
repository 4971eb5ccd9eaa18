"""Upwind finite differences on Shishkin meshes for the 1D problems.

Shows the layer-adapted mesh transition points and a mesh-refinement
table for Examples 1 and 2 at several parameter pairs: the maximum
nodal error decreases steadily as the mesh is refined, even when the
layers are far too thin for a uniform mesh.

Run:  python3 demos/04_fdm_shishkin.py
"""

import numpy as np

from papinn import PerturbationPair, get_problem, linf_err, shishkin_mesh, upwind_solve
from papinn.problems import exact_batch

pair = PerturbationPair(1e-2, 1e-3)
spec = get_problem("ex1")
mesh = shishkin_mesh(64, pair, spec)
print(f"Shishkin mesh, N = 64, eps = (1e-2, 1e-3): "
      f"tau_L = {mesh.tau_left:.4f}, tau_R = {mesh.tau_right:.4f}")
print(f"smallest cell {np.min(np.diff(mesh.nodes)):.2e}, "
      f"largest cell {np.max(np.diff(mesh.nodes)):.2e}")

for pid in ("ex1", "ex2"):
    spec = get_problem(pid)
    print(f"\n{pid}: max nodal error vs N")
    header = f"{'N':>6}" + "".join(f"  ({e1:.0e},{e2:.0e})" for e1, e2 in
                                   [(1e-2, 1e-3), (1e-3, 1e-4), (1e-4, 1e-5)])
    print(header)
    for n in (64, 128, 256, 512, 1024):
        cells = [f"{n:>6}"]
        for e1, e2 in [(1e-2, 1e-3), (1e-3, 1e-4), (1e-4, 1e-5)]:
            pair = PerturbationPair(e1, e2)
            mesh = shishkin_mesh(n, pair, spec)
            u = upwind_solve(spec, pair, mesh)
            exact = exact_batch(spec, mesh.nodes[:, None], pair)
            cells.append(f"{linf_err(exact, u):>14.3e}")
        print("".join(cells))

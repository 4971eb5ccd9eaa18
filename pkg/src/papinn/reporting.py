"""Error metrics, evaluation grids, experiment configs and artifacts.

An experiment run writes, under its output directory:
  errors.csv    method, example, eps1, eps2, e2, e_inf, seed, iters
  history.csv   per continuation step (pa_pinn only)
  loss.csv      iter, loss (concatenated over inner solves)
  solution.csv  grid coordinates, exact, predicted
  model.ckpt    final network parameters
"""

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from . import defaults
from .continuation import ContinuationConfig, Schedule, run_pa_pinn
from .network import NetworkShape, batch_forward, save_checkpoint
from .problems import PerturbationPair, exact_batch, get_problem
from .sampling import make_training_set
from .training import ConfigurationError, LossWeights, OptimConfig, train_standard_pinn


class UnsupportedOperationError(ValueError):
    """The requested method does not apply to this problem."""


def rel_l2(v, v_hat):
    """Relative Euclidean error sqrt(sum (v - v_hat)^2 / sum v^2)."""
    v = np.asarray(v, dtype=float)
    v_hat = np.asarray(v_hat, dtype=float)
    if v.shape != v_hat.shape:
        raise ValueError("vectors must have equal length")
    denom = np.sum(v * v)
    if denom == 0.0:
        raise ZeroDivisionError("reference vector is identically zero")
    return float(np.sqrt(np.sum((v - v_hat) ** 2) / denom))


def linf_err(v, v_hat):
    """Maximum absolute componentwise difference."""
    v = np.asarray(v, dtype=float)
    v_hat = np.asarray(v_hat, dtype=float)
    if v.shape != v_hat.shape:
        raise ValueError("vectors must have equal length")
    return float(np.max(np.abs(v - v_hat)))


@dataclass(frozen=True)
class ErrorReport:
    e2: float
    e_inf: float
    grid_size: int
    eval_time: float = None   # time slice used for time-dependent problems


def evaluation_grid(spec, grid_n):
    """Uniform tensor grid over the closed domain, endpoints included.

    Time-dependent problems are evaluated on the final-time slice t = 1.
    """
    axis = np.linspace(0.0, 1.0, grid_n)
    sd = spec.spatial_dim
    if sd == 1:
        spatial = axis[:, None]
    else:
        xx, yy = np.meshgrid(axis, axis, indexing="ij")
        spatial = np.column_stack([xx.ravel(), yy.ravel()])
    if spec.time_dependent:
        from .problems import TIME_HORIZON
        t = np.full((spatial.shape[0], 1), TIME_HORIZON)
        return np.hstack([spatial, t])
    return spatial


def evaluate(params, spec, pair, grid_n=None, predictions=None):
    """E2 and Einf of the network against the exact solution on the grid."""
    if spec.exact_fn is None:
        raise UnsupportedOperationError(f"{spec.pid} has no exact solution")
    if grid_n is None:
        grid_n = defaults.GRID_1D if spec.spatial_dim == 1 else defaults.GRID_2D
    grid = evaluation_grid(spec, grid_n)
    exact = exact_batch(spec, grid, pair)
    pred = predictions if predictions is not None else batch_forward(params, grid)
    return ErrorReport(
        e2=rel_l2(exact, pred),
        e_inf=linf_err(exact, pred),
        grid_size=grid.shape[0],
        eval_time=1.0 if spec.time_dependent else None,
    )


# ---------------------------------------------------------------------------
# Experiment configuration and runner


@dataclass
class ExperimentConfig:
    problem: str
    eps1: float
    eps2: float
    method: str = "pa_pinn"        # pa_pinn | pinn | fdm
    schedule: str = "linear"       # linear | geometric
    schedule_steps: int = defaults.LINEAR_STEPS
    eps1_start: float = defaults.EPS_START[0]
    eps2_start: float = defaults.EPS_START[1]
    hidden_layers: int = None
    hidden_width: int = None
    n_interior: int = None
    n_boundary: int = None
    iters: int = None
    theta1: float = 1.0
    theta2: float = 1.0
    tol: float = defaults.INNER_TOL
    inner_restarts: int = defaults.INNER_RESTARTS
    refine_pool: int = defaults.REFINE_POOL
    refine_k: int = defaults.REFINE_K
    fdm_n: int = 1024
    seed: int = 0
    grid_n: int = None
    out_dir: str = "."


_CONFIG_TYPES = {
    "problem": str, "method": str, "schedule": str, "out_dir": str,
    "eps1": float, "eps2": float, "eps1_start": float, "eps2_start": float,
    "theta1": float, "theta2": float, "tol": float,
    "schedule_steps": int, "hidden_layers": int, "hidden_width": int,
    "n_interior": int, "n_boundary": int, "iters": int,
    "inner_restarts": int, "refine_pool": int, "refine_k": int,
    "fdm_n": int, "seed": int, "grid_n": int,
}


def parse_config(path):
    """Read a flat key=value experiment config file."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{lineno}: expected key=value")
            key, val = (t.strip() for t in line.split("=", 1))
            if key not in _CONFIG_TYPES:
                raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_TYPES[key](val)
    missing = {"problem", "eps1", "eps2"} - set(values)
    if missing:
        raise ConfigurationError(f"{path}: missing required keys {sorted(missing)}")
    return ExperimentConfig(**values)


def _network_shape(cfg, spec):
    base = defaults.default_shape(spec)
    return NetworkShape(
        input_dim=spec.input_dim,
        hidden_layers=cfg.hidden_layers or base.hidden_layers,
        hidden_width=cfg.hidden_width or base.hidden_width,
    )


def _continuation_config(cfg, spec):
    if cfg.schedule == "linear":
        s1 = Schedule("linear", cfg.eps1_start, cfg.eps1, steps=cfg.schedule_steps)
        s2 = Schedule("linear", cfg.eps2_start, cfg.eps2, steps=cfg.schedule_steps)
    elif cfg.schedule == "geometric":
        s1 = Schedule("geometric", cfg.eps1_start, cfg.eps1, ratio=defaults.GEOM_RATIO_1)
        s2 = Schedule("geometric", cfg.eps2_start, cfg.eps2, ratio=defaults.GEOM_RATIO_2)
    else:
        raise ConfigurationError(f"unknown schedule {cfg.schedule!r}")
    iters = cfg.iters if cfg.iters is not None else defaults.default_iters(spec)
    return ContinuationConfig(
        schedule1=s1, schedule2=s2,
        shape=_network_shape(cfg, spec),
        n_interior=cfg.n_interior, n_boundary=cfg.n_boundary,
        weights=LossWeights(cfg.theta1, cfg.theta2),
        inner_budget=OptimConfig(max_iters=iters),
        tol=cfg.tol, inner_restarts=cfg.inner_restarts,
        refine_pool=cfg.refine_pool, refine_k=cfg.refine_k,
        seed=cfg.seed, eval_grid_n=cfg.grid_n,
    )


def _write_errors_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["method", "example", "eps1", "eps2", "e2", "e_inf", "seed", "iters"])
        for method, example, eps1, eps2, e2, e_inf, seed, iters in rows:
            w.writerow([method, example, f"{eps1:.5e}", f"{eps2:.5e}",
                        f"{e2:.5e}", f"{e_inf:.5e}", seed, iters])


def _write_loss_csv(path, losses):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iter", "loss"])
        for i, v in enumerate(losses):
            w.writerow([i, f"{v:.5e}"])


def _write_solution_csv(path, spec, grid, exact, predicted):
    if spec.input_dim == 1:
        header = ["x"]
    elif spec.input_dim == 2 and spec.time_dependent:
        header = ["x", "t"]
    elif spec.input_dim == 2:
        header = ["x", "y"]
    else:
        header = ["x", "y", "t"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header + ["exact", "predicted"])
        for row, ve, vp in zip(grid, exact, predicted):
            w.writerow([f"{c:.10g}" for c in row] + [f"{ve:.5e}", f"{vp:.5e}"])


def run_experiment(cfg):
    """Run one experiment per the config and write its artifacts.

    Returns the ErrorReport (pa_pinn / pinn) or the FDM error report.
    """
    spec = get_problem(cfg.problem)
    pair = PerturbationPair(cfg.eps1, cfg.eps2)
    os.makedirs(cfg.out_dir, exist_ok=True)
    grid_n = cfg.grid_n or (defaults.GRID_1D if spec.spatial_dim == 1 else defaults.GRID_2D)

    if cfg.method == "fdm":
        return _run_fdm(cfg, spec, pair)
    if cfg.method not in ("pa_pinn", "pinn"):
        raise ConfigurationError(f"unknown method {cfg.method!r}")

    losses = []
    if cfg.method == "pa_pinn":
        ccfg = _continuation_config(cfg, spec)
        params, history = run_pa_pinn(
            spec, ccfg, loss_callback=lambda j, rep: losses.extend(rep.loss_history))
        history.write_csv(os.path.join(cfg.out_dir, "history.csv"))
        iters = history.total_iterations
    else:
        n_int, n_bnd = cfg.n_interior, cfg.n_boundary
        d_int, d_bnd = defaults.default_counts(spec)
        tset = make_training_set(spec, n_int or d_int, n_bnd or d_bnd, cfg.seed)
        iters_budget = cfg.iters if cfg.iters is not None else defaults.default_iters(spec)
        params, report = train_standard_pinn(
            spec, pair, tset, LossWeights(cfg.theta1, cfg.theta2),
            OptimConfig(max_iters=iters_budget), cfg.seed,
            shape=_network_shape(cfg, spec))
        losses.extend(report.loss_history)
        iters = report.iterations_used

    report = evaluate(params, spec, pair, grid_n)
    _write_errors_csv(os.path.join(cfg.out_dir, "errors.csv"),
                      [(cfg.method, spec.pid, cfg.eps1, cfg.eps2,
                        report.e2, report.e_inf, cfg.seed, iters)])
    _write_loss_csv(os.path.join(cfg.out_dir, "loss.csv"), losses)
    grid = evaluation_grid(spec, grid_n)
    _write_solution_csv(os.path.join(cfg.out_dir, "solution.csv"), spec, grid,
                        exact_batch(spec, grid, pair), batch_forward(params, grid))
    save_checkpoint(params, os.path.join(cfg.out_dir, "model.ckpt"))
    return report


def _run_fdm(cfg, spec, pair):
    from .fdm import shishkin_mesh, upwind_solve
    if spec.input_dim != 1 or spec.time_dependent:
        raise UnsupportedOperationError("the FDM baseline only covers 1D steady problems")
    mesh = shishkin_mesh(cfg.fdm_n, pair, spec)
    u = upwind_solve(spec, pair, mesh)
    exact = exact_batch(spec, mesh.nodes[:, None], pair)
    report = ErrorReport(e2=rel_l2(exact, u), e_inf=linf_err(exact, u),
                         grid_size=mesh.nodes.size)
    with open(os.path.join(cfg.out_dir, "errors.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["method", "eps1", "eps2", "N", "e_inf"])
        w.writerow(["fdm", f"{cfg.eps1:.5e}", f"{cfg.eps2:.5e}",
                    cfg.fdm_n, f"{report.e_inf:.5e}"])
    _write_solution_csv(os.path.join(cfg.out_dir, "solution.csv"), spec,
                        mesh.nodes[:, None], exact, u)
    return report

"""Parameter-continuation training engine.

Phase 1 walks eps1 down its schedule with eps2 held at its starting
value; phase 2 walks eps2 down with eps1 held at its final value.  Each
step re-optimizes from the previous step's weights, repeats the inner
solve until the prediction iterates stabilize, then enlarges the
training set with residual-selected points.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from . import defaults
from .network import batch_forward, init_params
from .problems import exact_batch
from .sampling import TrainingSet, adaptive_refine, make_training_set
from .training import LossWeights, OptimConfig, make_objective, minimize, relative_change


@dataclass(frozen=True)
class Schedule:
    """A decreasing parameter schedule, linear or geometric."""

    kind: str            # "linear" | "geometric"
    start: float
    end: float
    steps: int = defaults.LINEAR_STEPS   # linear: number of interior updates N
    ratio: float = defaults.GEOM_RATIO_1  # geometric: multiplier c

    def __post_init__(self):
        if self.kind not in ("linear", "geometric"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if not (0.0 < self.end <= self.start <= 1.0):
            raise ValueError(f"need 0 < end <= start <= 1, got {self.start}, {self.end}")
        if self.kind == "linear" and self.steps < 0:
            raise ValueError("linear schedule needs steps >= 0")
        if self.kind == "geometric" and not (0.0 < self.ratio < 1.0):
            raise ValueError("geometric schedule needs 0 < ratio < 1")

    def values(self):
        if self.kind == "linear":
            return linear_sequence(self)
        return geometric_sequence(self)


def linear_sequence(s):
    """start, start - d, ..., end with d = (start - end) / (steps + 1)."""
    if s.start == s.end:
        return [s.start]
    delta = (s.start - s.end) / (s.steps + 1)
    vals = [s.start - j * delta for j in range(s.steps + 2)]
    vals[-1] = s.end
    return vals


def geometric_sequence(s):
    """start, start*c, start*c^2, ... clamping the final entry to end."""
    if s.start == s.end:
        return [s.start]
    vals = [s.start]
    v = s.start * s.ratio
    while v > s.end:
        vals.append(v)
        v *= s.ratio
    vals.append(s.end)
    return vals


@dataclass(frozen=True)
class ContinuationConfig:
    schedule1: Schedule
    schedule2: Schedule
    shape: object = None                      # NetworkShape; problem default if None
    n_interior: int = None
    n_boundary: int = None
    weights: LossWeights = LossWeights()
    inner_budget: OptimConfig = OptimConfig()
    tol: float = defaults.INNER_TOL
    inner_restarts: int = defaults.INNER_RESTARTS
    refine_pool: int = defaults.REFINE_POOL
    refine_k: int = defaults.REFINE_K
    seed: int = 0
    eval_grid_n: int = None                   # inner-convergence grid, default per dim

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.inner_restarts < 1:
            raise ValueError("inner_restarts must be >= 1")


@dataclass
class StepRecord:
    step: int
    eps1: float
    eps2: float
    inner_loss: float
    e2: float            # relative L2 error vs exact at this (eps1, eps2); nan if unknown
    n_interior: int
    iterations: int = 0


@dataclass
class ContinuationHistory:
    records: list = field(default_factory=list)

    @property
    def total_iterations(self):
        return sum(r.iterations for r in self.records)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "eps1", "eps2", "inner_loss", "e2", "n_interior"])
            for r in self.records:
                w.writerow([r.step, f"{r.eps1:.5e}", f"{r.eps2:.5e}",
                            f"{r.inner_loss:.5e}", f"{r.e2:.5e}", r.n_interior])


def pair_sequence(cfg):
    """The (eps1, eps2) visited by the two phases, corner counted once."""
    from .problems import PerturbationPair
    seq1 = cfg.schedule1.values()
    seq2 = cfg.schedule2.values()
    pairs = [PerturbationPair(e1, seq2[0]) for e1 in seq1]
    pairs += [PerturbationPair(seq1[-1], e2) for e2 in seq2[1:]]
    return pairs


def run_pa_pinn(spec, cfg, loss_callback=None):
    """Two-phase continuation training. Returns (params, history).

    loss_callback, if given, receives (step_index, TrainReport) after
    every inner solve (used to persist loss curves).
    """
    shape = cfg.shape if cfg.shape is not None else defaults.default_shape(spec)
    n_int, n_bnd = cfg.n_interior, cfg.n_boundary
    if n_int is None or n_bnd is None:
        d_int, d_bnd = defaults.default_counts(spec)
        n_int = d_int if n_int is None else n_int
        n_bnd = d_bnd if n_bnd is None else n_bnd
    grid_n = cfg.eval_grid_n
    if grid_n is None:
        grid_n = defaults.GRID_1D if spec.spatial_dim == 1 else defaults.GRID_2D

    from .reporting import evaluation_grid
    grid = evaluation_grid(spec, grid_n)

    ss = np.random.SeedSequence(cfg.seed)
    seed_init, seed_set, seed_refine = ss.spawn(3)
    refine_seeds = seed_refine.spawn(256)

    params = init_params(shape, seed_init)
    tset = make_training_set(spec, n_int, n_bnd, seed_set)
    pairs = pair_sequence(cfg)

    history = ContinuationHistory()
    for j, pair in enumerate(pairs):
        prev_pred = batch_forward(params, grid)
        step_iters = 0
        final_loss = np.nan
        for _ in range(cfg.inner_restarts):
            objective = make_objective(tset, spec, pair, cfg.weights)
            params, report = minimize(objective, params, cfg.inner_budget)
            step_iters += report.iterations_used
            final_loss = report.final_loss
            if loss_callback is not None:
                loss_callback(j, report)
            pred = batch_forward(params, grid)
            rc = relative_change(pred, prev_pred)
            prev_pred = pred
            if rc < cfg.tol:
                break

        exact = exact_batch(spec, grid, pair)
        denom = np.linalg.norm(exact)
        e2 = float(np.linalg.norm(prev_pred - exact) / denom) if denom > 0 else np.nan

        history.records.append(StepRecord(
            step=j, eps1=pair.eps1, eps2=pair.eps2, inner_loss=final_loss,
            e2=e2, n_interior=tset.n_interior, iterations=step_iters,
        ))

        if cfg.refine_k > 0 and j < len(pairs) - 1:
            extra = adaptive_refine(params, spec, pair, cfg.refine_pool,
                                    cfg.refine_k, refine_seeds[j],
                                    existing=tset.interior)
            tset = TrainingSet(
                interior=np.vstack([tset.interior, extra]),
                boundary=tset.boundary,
                boundary_data=tset.boundary_data,
            )

    return params, history

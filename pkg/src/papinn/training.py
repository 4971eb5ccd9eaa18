"""Loss assembly and limited-memory BFGS training.

The composite loss is
    theta1 * mean(residual^2 over interior points)
  + theta2 * mean((u - boundary datum)^2 over boundary points),
with residuals coming from exact jet derivatives.  Minimization uses
L-BFGS with a strong-Wolfe line search (bracket + cubic-interpolation
zoom); the loss history over accepted steps is monotone by construction.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import jets
from .jets import NumericsError, jet_graph, loss_gradient, value_graph
from .network import flatten, init_params, unflatten
from .tape import mean as tape_mean


class ConfigurationError(ValueError):
    """Inconsistent training configuration."""


@dataclass(frozen=True)
class LossWeights:
    """Operator and boundary loss weights."""

    theta1: float = 1.0
    theta2: float = 1.0

    def __post_init__(self):
        if self.theta1 < 0 or self.theta2 < 0:
            raise ValueError("loss weights must be nonnegative")
        if self.theta1 == 0 and self.theta2 == 0:
            raise ValueError("at least one loss weight must be positive")


@dataclass(frozen=True)
class OptimConfig:
    max_iters: int = 1000
    history_size: int = 10
    grad_tol: float = 1e-9
    c1: float = 1e-4
    c2: float = 0.9
    max_ls_evals: int = 40

    def __post_init__(self):
        if not (0.0 < self.c1 < self.c2 < 1.0):
            raise ValueError("need 0 < c1 < c2 < 1")
        if self.history_size < 1:
            raise ValueError("history_size must be >= 1")


@dataclass
class TrainReport:
    final_loss: float
    iterations_used: int
    loss_history: list
    elapsed_seconds: float
    termination: str = "max_iters"  # or "grad_tol", "line_search_failure"


def _loss_builder(tset, spec, pair, w):
    def build(ws, bs):
        terms = []
        if w.theta1 != 0.0:
            value, grads, laps = jet_graph(ws, bs, tset.interior)
            res = spec.residual_batch(value, grads, laps, tset.interior, pair)
            terms.append(w.theta1 * tape_mean(res * res))
        if w.theta2 != 0.0:
            ub = value_graph(ws, bs, tset.boundary)
            mis = ub - tset.boundary_data
            terms.append(w.theta2 * tape_mean(mis * mis))
        out = terms[0]
        for t in terms[1:]:
            out = out + t
        return out
    return build


def _check_set(tset, w):
    if w.theta1 != 0.0 and tset.n_interior == 0:
        raise ConfigurationError("operator weight is nonzero but the interior set is empty")
    if w.theta2 != 0.0 and tset.n_boundary == 0:
        raise ConfigurationError("boundary weight is nonzero but the boundary set is empty")


def total_loss(params, tset, spec, pair, w):
    """Weighted operator + boundary loss (plain evaluation, no gradient)."""
    _check_set(tset, w)
    loss = 0.0
    if w.theta1 != 0.0:
        values, grads, laps = jets.batch_jet(params, tset.interior)
        first = [grads[:, i] for i in range(spec.input_dim)]
        second = [laps[:, i] for i in range(spec.input_dim)]
        res = spec.residual_batch(values, first, second, tset.interior, pair)
        loss += w.theta1 * float(np.mean(res * res))
    if w.theta2 != 0.0:
        from .network import batch_forward
        mis = batch_forward(params, tset.boundary) - tset.boundary_data
        loss += w.theta2 * float(np.mean(mis * mis))
    return loss


def make_objective(tset, spec, pair, w):
    """params -> (loss, flat gradient) closure for the optimizer."""
    _check_set(tset, w)
    builder = _loss_builder(tset, spec, pair, w)

    def objective(params):
        lg = loss_gradient(params, builder)
        return lg.loss, lg.gradient

    return objective


def relative_change(u_new, u_old):
    """Euclidean-norm relative difference ||new - old|| / ||new||."""
    u_new = np.asarray(u_new, dtype=float)
    u_old = np.asarray(u_old, dtype=float)
    if u_new.shape != u_old.shape:
        raise ValueError("vectors must have equal length")
    denom = np.linalg.norm(u_new)
    if denom == 0.0:
        return np.inf
    return float(np.linalg.norm(u_new - u_old) / denom)


# ---------------------------------------------------------------------------
# L-BFGS with strong-Wolfe line search (two-loop recursion).


def _cubic_min(a, fa, ga, b, fb, gb):
    """Minimizer of the cubic interpolant on [a, b]; nan on failure."""
    d1 = ga + gb - 3.0 * (fa - fb) / (a - b)
    rad = d1 * d1 - ga * gb
    if rad < 0.0:
        return np.nan
    d2 = np.sign(b - a) * np.sqrt(rad)
    t = b - (b - a) * (gb + d2 - d1) / (gb - ga + 2.0 * d2)
    return t


def _zoom(phi, lo, hi, f0, g0, c1, c2, evals_left):
    a_lo, f_lo, g_lo = lo
    a_hi, f_hi, g_hi = hi
    result = None
    for _ in range(evals_left):
        a = _cubic_min(a_lo, f_lo, g_lo, a_hi, f_hi, g_hi)
        width = abs(a_hi - a_lo)
        inner_lo, inner_hi = min(a_lo, a_hi), max(a_lo, a_hi)
        if not np.isfinite(a) or a <= inner_lo + 0.1 * width or a >= inner_hi - 0.1 * width:
            a = 0.5 * (a_lo + a_hi)
        f, g = phi(a)
        if f > f0 + c1 * a * g0 or f >= f_lo:
            a_hi, f_hi, g_hi = a, f, g
        else:
            if abs(g) <= -c2 * g0:
                result = (a, f, g)
                break
            if g * (a_hi - a_lo) >= 0.0:
                a_hi, f_hi, g_hi = a_lo, f_lo, g_lo
            a_lo, f_lo, g_lo = a, f, g
        if abs(a_hi - a_lo) < 1e-16:
            break
    return result


def _strong_wolfe(phi, f0, g0, c1, c2, max_evals, a_init=1.0):
    """Line search enforcing the strong Wolfe conditions.

    phi(a) returns (f(x + a d), directional derivative at x + a d).
    Returns (a, f, g) or None on failure.
    """
    a_prev, f_prev, g_prev = 0.0, f0, g0
    a = a_init
    evals = 0
    while evals < max_evals:
        f, g = phi(a)
        evals += 1
        if f > f0 + c1 * a * g0 or (evals > 1 and f >= f_prev):
            return _zoom(phi, (a_prev, f_prev, g_prev), (a, f, g),
                         f0, g0, c1, c2, max_evals - evals)
        if abs(g) <= -c2 * g0:
            return (a, f, g)
        if g >= 0.0:
            return _zoom(phi, (a, f, g), (a_prev, f_prev, g_prev),
                         f0, g0, c1, c2, max_evals - evals)
        a_prev, f_prev, g_prev = a, f, g
        a = 2.0 * a
    return None


def minimize(objective, init, cfg):
    """Limited-memory BFGS from init; objective maps MlpParams to
    (loss, flat gradient).  Returns (MlpParams, TrainReport).
    """
    t0 = time.perf_counter()
    sizes = init.layer_sizes
    x = flatten(init)
    f, g = objective(init)
    if not np.isfinite(f):
        raise NumericsError(f"objective is {f} at the initial point")
    history = [f]
    s_mem, y_mem, rho_mem = [], [], []
    termination = "max_iters"
    iters = 0

    for it in range(cfg.max_iters):
        if np.max(np.abs(g)) <= cfg.grad_tol:
            termination = "grad_tol"
            break

        # Two-loop recursion for d = -H g.
        q = g.copy()
        alphas = []
        for s, y, rho in zip(reversed(s_mem), reversed(y_mem), reversed(rho_mem)):
            a = rho * np.dot(s, q)
            alphas.append(a)
            q -= a * y
        if y_mem:
            gamma = np.dot(s_mem[-1], y_mem[-1]) / np.dot(y_mem[-1], y_mem[-1])
            q *= gamma
        for (s, y, rho), a in zip(zip(s_mem, y_mem, rho_mem), reversed(alphas)):
            b = rho * np.dot(y, q)
            q += (a - b) * s
        d = -q

        dg = np.dot(d, g)
        if dg >= 0.0:
            # Not a descent direction; restart from steepest descent.
            s_mem, y_mem, rho_mem = [], [], []
            d = -g
            dg = -np.dot(g, g)

        g_new_holder = {}

        def phi(a, x=x, d=d):
            p = unflatten(sizes, x + a * d)
            fa, ga = objective(p)
            if not np.isfinite(fa):
                raise NumericsError(f"objective is {fa} during the line search")
            g_new_holder[a] = ga
            return fa, float(np.dot(ga, d))

        a_init = min(1.0, 1.0 / max(1.0, np.max(np.abs(g)))) if it == 0 else 1.0
        hit = _strong_wolfe(phi, f, dg, cfg.c1, cfg.c2, cfg.max_ls_evals, a_init)
        if hit is None:
            termination = "line_search_failure"
            break
        a, f_new, _ = hit
        g_new = g_new_holder[a]
        step = a * d
        x = x + step
        yk = g_new - g
        sy = np.dot(step, yk)
        if sy > 1e-12 * np.linalg.norm(step) * np.linalg.norm(yk):
            s_mem.append(step)
            y_mem.append(yk)
            rho_mem.append(1.0 / sy)
            if len(s_mem) > cfg.history_size:
                s_mem.pop(0)
                y_mem.pop(0)
                rho_mem.pop(0)
        f, g = f_new, g_new
        history.append(f)
        iters = it + 1

    params = unflatten(sizes, x)
    report = TrainReport(
        final_loss=history[-1],
        iterations_used=iters,
        loss_history=history,
        elapsed_seconds=time.perf_counter() - t0,
        termination=termination,
    )
    return params, report


def train_standard_pinn(spec, pair, tset, w, cfg, seed, shape=None):
    """Baseline: fresh initialization, one minimize at the target pair."""
    from .defaults import default_shape
    if shape is None:
        shape = default_shape(spec)
    params = init_params(shape, seed)
    objective = make_objective(tset, spec, pair, w)
    return minimize(objective, params, cfg)

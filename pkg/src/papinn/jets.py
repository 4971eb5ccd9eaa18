"""Differentiation services for the network.

Input derivatives (first and pure second per coordinate) are propagated
forward through the layers alongside the values, using
tanh' = 1 - tanh^2 and tanh'' = -2 tanh (1 - tanh^2).  Mixed second
partials are never propagated: the residual operators only need the
Laplacian and first derivatives.

Parameter gradients of scalar losses come from a reverse pass over the
recorded jet-carrying computation (see tape.py).
"""

from dataclasses import dataclass

import numpy as np

from . import tape
from .network import forward, unflatten


class NumericsError(ArithmeticError):
    """A loss or residual evaluation produced a non-finite value."""


@dataclass(frozen=True)
class Jet2:
    """Network value with first and pure second input derivatives."""

    value: float
    grad: np.ndarray        # (input_dim,) entries d u / d x_i
    lap_terms: np.ndarray   # (input_dim,) entries d^2 u / d x_i^2


@dataclass(frozen=True)
class LossGrad:
    loss: float
    gradient: np.ndarray  # flat, canonical parameter order


def batch_jet(params, xs):
    """Values, first and pure second derivatives at xs of shape (n, d).

    Returns (values (n,), grads (n, d), laps (n, d)) as plain arrays.
    """
    x = np.asarray(xs, dtype=float)
    d = params.layer_sizes[0]
    if x.ndim != 2 or x.shape[1] != d:
        raise ValueError(f"points have shape {x.shape}, expected (n, {d})")
    n = x.shape[0]
    a = x
    da = [np.tile(np.eye(d)[i], (n, 1)) for i in range(d)]
    sa = [np.zeros((n, d)) for _ in range(d)]
    last = len(params.weights) - 1
    for l, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = a @ w.T + b
        dz = [da[i] @ w.T for i in range(d)]
        sz = [sa[i] @ w.T for i in range(d)]
        if l == last:
            a, da, sa = z, dz, sz
        else:
            a = np.tanh(z)
            t1 = 1.0 - a * a
            t2 = -2.0 * a * t1
            da = [t1 * dz[i] for i in range(d)]
            sa = [t1 * sz[i] + t2 * dz[i] * dz[i] for i in range(d)]
    values = a[:, 0]
    grads = np.stack([da[i][:, 0] for i in range(d)], axis=1)
    laps = np.stack([sa[i][:, 0] for i in range(d)], axis=1)
    return values, grads, laps


def eval_jet(params, x):
    """Jet of the network at a single input point (exact, not FD)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (params.layer_sizes[0],):
        raise ValueError(f"input has shape {x.shape}, expected ({params.layer_sizes[0]},)")
    values, grads, laps = batch_jet(params, x[None, :])
    # value must agree bit-for-bit with forward(); both run the same
    # sequence of matmuls, so recompute through forward for the scalar.
    return Jet2(value=forward(params, x), grad=grads[0], lap_terms=laps[0])


def param_leaves(params):
    """Tape leaves (W, b per layer) for building differentiable losses."""
    ws = [tape.leaf(w) for w in params.weights]
    bs = [tape.leaf(b) for b in params.biases]
    return ws, bs


def jet_graph(ws, bs, xs, second=True):
    """Jet propagation on the tape; xs is a constant (n, d) array.

    Returns (value, grads, laps) as Tensors of shape (n,) each; grads
    and laps are per-coordinate lists.  With second=False the pure
    second derivative channels are skipped (laps is None).
    """
    x = np.asarray(xs, dtype=float)
    n, d = x.shape
    a = tape.constant(x)
    da = [tape.constant(np.tile(np.eye(d)[i], (n, 1))) for i in range(d)]
    sa = [tape.constant(np.zeros((n, d))) for _ in range(d)] if second else None
    last = len(ws) - 1
    for l, (w, b) in enumerate(zip(ws, bs)):
        z = tape.linear(a, w, b)
        dz = [tape.matmul_t(da[i], w) for i in range(d)]
        sz = [tape.matmul_t(sa[i], w) for i in range(d)] if second else None
        if l == last:
            a, da, sa = z, dz, sz
        else:
            a = tape.tanh(z)
            t1 = 1.0 - a * a
            da = [t1 * dz[i] for i in range(d)]
            if second:
                t2 = -2.0 * (a * t1)
                sa = [t1 * sz[i] + t2 * (dz[i] * dz[i]) for i in range(d)]
    value = _first_column(a)
    grads = [_first_column(da[i]) for i in range(d)]
    laps = [_first_column(sa[i]) for i in range(d)] if second else None
    return value, grads, laps


def _first_column(t):
    out = tape.Tensor(t.data[:, 0], (t,))
    def bwd(g, t=t):
        full = np.zeros_like(t.data)
        full[:, 0] = g
        t._accum(full)
    out._backward = bwd
    return out


def value_graph(ws, bs, xs):
    """Plain forward pass on the tape (boundary/initial mismatch terms)."""
    x = np.asarray(xs, dtype=float)
    a = tape.constant(x)
    last = len(ws) - 1
    for l, (w, b) in enumerate(zip(ws, bs)):
        a = tape.linear(a, w, b)
        if l != last:
            a = tape.tanh(a)
    return _first_column(a)


def loss_gradient(params, loss_builder):
    """Loss value and exact reverse-mode gradient over all parameters.

    loss_builder receives per-layer weight and bias Tensors and must
    return a scalar Tensor built from tape operations.
    """
    ws, bs = param_leaves(params)
    loss = loss_builder(ws, bs)
    value = float(loss.data)
    if not np.isfinite(value):
        raise NumericsError(f"loss evaluated to {value}")
    loss.backward()
    parts = []
    for w, b in zip(ws, bs):
        gw = w.grad if w.grad is not None else np.zeros_like(w.data)
        gb = b.grad if b.grad is not None else np.zeros_like(b.data)
        parts.append(np.asarray(gw).ravel())
        parts.append(np.asarray(gb).ravel())
    gradient = np.concatenate(parts)
    if not np.isfinite(gradient).all():
        raise NumericsError("non-finite entries in the parameter gradient")
    return LossGrad(loss=value, gradient=gradient)


def fd_loss_gradient(params, loss_fn, h=1e-4):
    """Central finite-difference gradient oracle for testing."""
    from .network import flatten
    theta = flatten(params)
    grad = np.zeros_like(theta)
    sizes = params.layer_sizes
    for i in range(theta.size):
        tp = theta.copy(); tp[i] += h
        tm = theta.copy(); tm[i] -= h
        grad[i] = (loss_fn(unflatten(sizes, tp)) - loss_fn(unflatten(sizes, tm))) / (2 * h)
    return grad

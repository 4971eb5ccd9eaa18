"""Minimal reverse-mode automatic differentiation on numpy arrays.

The graph is rebuilt for every loss evaluation, so nodes are cheap
records: data, accumulated gradient, parents and a backward closure.
Only the primitives needed by the jet-carrying network computation are
provided.  All arithmetic is float64.
"""

import numpy as np


class Tensor:
    """A node in the computation graph holding a float64 array (or scalar)."""

    __slots__ = ("data", "grad", "_parents", "_backward")

    # Make ndarray <op> Tensor defer to the Tensor's reflected methods.
    __array_ufunc__ = None

    def __init__(self, data, parents=(), backward=None):
        self.data = data
        self.grad = None
        self._parents = parents
        self._backward = backward

    @property
    def shape(self):
        return np.shape(self.data)

    # -- graph-building arithmetic -------------------------------------
    # Constants (python scalars / numpy arrays) are folded into the
    # backward closures rather than wrapped in nodes.

    def __add__(self, other):
        if isinstance(other, Tensor):
            out = Tensor(self.data + other.data, (self, other))
            def bwd(g, a=self, b=other):
                a._accum(g)
                b._accum(g)
        else:
            out = Tensor(self.data + other, (self,))
            def bwd(g, a=self):
                a._accum(g)
        out._backward = bwd
        return out

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Tensor):
            out = Tensor(self.data - other.data, (self, other))
            def bwd(g, a=self, b=other):
                a._accum(g)
                b._accum(-g)
        else:
            out = Tensor(self.data - other, (self,))
            def bwd(g, a=self):
                a._accum(g)
        out._backward = bwd
        return out

    def __rsub__(self, other):
        out = Tensor(other - self.data, (self,))
        def bwd(g, a=self):
            a._accum(-g)
        out._backward = bwd
        return out

    def __mul__(self, other):
        if isinstance(other, Tensor):
            out = Tensor(self.data * other.data, (self, other))
            def bwd(g, a=self, b=other):
                a._accum(g * b.data)
                b._accum(g * a.data)
        else:
            out = Tensor(self.data * other, (self,))
            def bwd(g, a=self, c=other):
                a._accum(g * c)
        out._backward = bwd
        return out

    __rmul__ = __mul__

    def __neg__(self):
        out = Tensor(-self.data, (self,))
        def bwd(g, a=self):
            a._accum(-g)
        out._backward = bwd
        return out

    # -- gradient accumulation ----------------------------------------

    def _accum(self, g):
        # Reverse any broadcasting that happened in the forward op.
        if np.shape(g) != np.shape(self.data):
            g = _unbroadcast(g, np.shape(self.data))
        if self.grad is None:
            self.grad = np.array(g, dtype=float) if np.ndim(g) else float(g)
        else:
            self.grad = self.grad + g

    def backward(self):
        """Accumulate gradients of this (scalar) node into every leaf."""
        order = []
        seen = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in seen:
                    stack.append((p, False))
        self.grad = 1.0
        for node in reversed(order):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)


def _unbroadcast(g, shape):
    """Sum gradient g down to the given shape (inverse of numpy broadcasting)."""
    while np.ndim(g) > len(shape):
        g = g.sum(axis=0)
    for ax, n in enumerate(shape):
        if n == 1 and g.shape[ax] != 1:
            g = g.sum(axis=ax, keepdims=True)
    return g


def constant(data):
    return Tensor(np.asarray(data, dtype=float))


def leaf(data):
    """A differentiable leaf (network parameter)."""
    return Tensor(np.asarray(data, dtype=float))


def linear(x, w, b):
    """x @ w.T + b for x: (n, fan_in), w: (fan_out, fan_in), b: (fan_out,)."""
    out = Tensor(x.data @ w.data.T + b.data, (x, w, b))
    def bwd(g, x=x, w=w, b=b):
        x._accum(g @ w.data)
        w._accum(g.T @ x.data)
        b._accum(g.sum(axis=0))
    out._backward = bwd
    return out


def matmul_t(x, w):
    """x @ w.T without bias (derivative channels of the jet recurrence)."""
    out = Tensor(x.data @ w.data.T, (x, w))
    def bwd(g, x=x, w=w):
        x._accum(g @ w.data)
        w._accum(g.T @ x.data)
    out._backward = bwd
    return out


def tanh(x):
    out = Tensor(np.tanh(x.data), (x,))
    def bwd(g, x=x, out=out):
        x._accum(g * (1.0 - out.data * out.data))
    out._backward = bwd
    return out


def mean(x):
    n = np.size(x.data)
    out = Tensor(float(np.sum(x.data)) / n, (x,))
    def bwd(g, x=x, n=n):
        x._accum(np.full(np.shape(x.data), g / n))
    out._backward = bwd
    return out


def total(x):
    out = Tensor(float(np.sum(x.data)), (x,))
    def bwd(g, x=x):
        x._accum(np.full(np.shape(x.data), g))
    out._backward = bwd
    return out

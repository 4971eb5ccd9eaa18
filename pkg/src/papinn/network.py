"""Fully connected tanh network: parameter container, init, forward pass.

Parameters are stored per layer as a weight matrix of shape
(n_l, n_{l-1}) and a bias vector of length n_l.  The canonical flat
ordering (used by the optimizer and checkpoints) is, layer by layer,
the row-major weight entries followed by the bias entries.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NetworkShape:
    """Architecture summary: input_dim in {1,2,3}, scalar output."""

    input_dim: int
    hidden_layers: int
    hidden_width: int
    output_dim: int = 1

    def __post_init__(self):
        if self.input_dim not in (1, 2, 3):
            raise ValueError(f"input_dim must be 1, 2 or 3, got {self.input_dim}")
        if self.hidden_layers < 1 or self.hidden_width < 1:
            raise ValueError("hidden_layers and hidden_width must be >= 1")
        if self.output_dim != 1:
            raise ValueError("output_dim is fixed at 1")

    @property
    def layer_sizes(self):
        return (self.input_dim,) + (self.hidden_width,) * self.hidden_layers + (self.output_dim,)


class MlpParams:
    """Immutable per-layer weights and biases of the network."""

    __slots__ = ("layer_sizes", "weights", "biases")

    def __init__(self, layer_sizes, weights, biases):
        layer_sizes = tuple(int(n) for n in layer_sizes)
        if any(n <= 0 for n in layer_sizes):
            raise ValueError("layer sizes must be positive")
        weights = tuple(np.array(w, dtype=float) for w in weights)
        biases = tuple(np.array(b, dtype=float) for b in biases)
        s = len(layer_sizes) - 1
        if len(weights) != s or len(biases) != s:
            raise ValueError("need one weight matrix and one bias vector per affine layer")
        for l in range(s):
            if weights[l].shape != (layer_sizes[l + 1], layer_sizes[l]):
                raise ValueError(
                    f"layer {l}: weight shape {weights[l].shape} != "
                    f"({layer_sizes[l + 1]}, {layer_sizes[l]})"
                )
            if biases[l].shape != (layer_sizes[l + 1],):
                raise ValueError(f"layer {l}: bias shape {biases[l].shape}")
            if not (np.isfinite(weights[l]).all() and np.isfinite(biases[l]).all()):
                raise ValueError(f"layer {l}: non-finite parameter entries")
            weights[l].setflags(write=False)
            biases[l].setflags(write=False)
        self.layer_sizes = layer_sizes
        self.weights = weights
        self.biases = biases

    @property
    def input_dim(self):
        return self.layer_sizes[0]

    @property
    def n_params(self):
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))

    def __eq__(self, other):
        if not isinstance(other, MlpParams):
            return NotImplemented
        return self.layer_sizes == other.layer_sizes and all(
            np.array_equal(a, b) for a, b in zip(self.weights, other.weights)
        ) and all(np.array_equal(a, b) for a, b in zip(self.biases, other.biases))


def init_params(shape, seed):
    """Glorot-uniform weights and zero biases, deterministic for a seed."""
    rng = np.random.default_rng(seed)
    sizes = shape.layer_sizes
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpParams(sizes, weights, biases)


def forward(params, x):
    """Evaluate the network at one input point. Returns a float.

    Hidden layers apply tanh; the output layer is affine.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (params.layer_sizes[0],):
        raise ValueError(f"input has shape {x.shape}, expected ({params.layer_sizes[0]},)")
    a = x
    last = len(params.weights) - 1
    for l, (w, b) in enumerate(zip(params.weights, params.biases)):
        a = w @ a + b
        if l != last:
            a = np.tanh(a)
    return float(a[0])


def batch_forward(params, xs):
    """Network values at xs of shape (n, input_dim). Returns (n,) array."""
    a = np.asarray(xs, dtype=float)
    if a.ndim != 2 or a.shape[1] != params.layer_sizes[0]:
        raise ValueError(f"points have shape {a.shape}, expected (n, {params.layer_sizes[0]})")
    last = len(params.weights) - 1
    for l, (w, b) in enumerate(zip(params.weights, params.biases)):
        a = a @ w.T + b
        if l != last:
            a = np.tanh(a)
    return a[:, 0]


def flatten(params):
    """Canonical flat parameter vector (per layer: row-major W, then b)."""
    parts = []
    for w, b in zip(params.weights, params.biases):
        parts.append(w.ravel())
        parts.append(b)
    return np.concatenate(parts)


def unflatten(layer_sizes, vec):
    """Rebuild MlpParams from a canonical flat vector."""
    vec = np.asarray(vec, dtype=float)
    weights, biases = [], []
    k = 0
    for n_in, n_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        weights.append(vec[k:k + n_out * n_in].reshape(n_out, n_in))
        k += n_out * n_in
        biases.append(vec[k:k + n_out])
        k += n_out
    if k != vec.size:
        raise ValueError(f"flat vector has {vec.size} entries, expected {k}")
    return MlpParams(layer_sizes, weights, biases)


def save_checkpoint(params, path):
    """Write parameters as a plain-text record with 17 significant digits."""
    with open(path, "w") as fh:
        fh.write("layer_sizes " + " ".join(str(n) for n in params.layer_sizes) + "\n")
        for l, (w, b) in enumerate(zip(params.weights, params.biases)):
            fh.write(f"W{l + 1}\n")
            for row in w:
                fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
            fh.write(f"b{l + 1}\n")
            fh.write(" ".join(f"{v:.17g}" for v in b) + "\n")


def load_checkpoint(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    head = lines[0].split()
    if head[0] != "layer_sizes":
        raise ValueError(f"{path}: not a checkpoint file")
    sizes = [int(t) for t in head[1:]]
    weights, biases = [], []
    i = 1
    for l in range(len(sizes) - 1):
        if lines[i] != f"W{l + 1}":
            raise ValueError(f"{path}: expected W{l + 1} marker")
        i += 1
        rows = []
        for _ in range(sizes[l + 1]):
            rows.append([float(t) for t in lines[i].split()])
            i += 1
        weights.append(np.array(rows))
        if lines[i] != f"b{l + 1}":
            raise ValueError(f"{path}: expected b{l + 1} marker")
        i += 1
        biases.append(np.array([float(t) for t in lines[i].split()]))
        i += 1
    return MlpParams(sizes, weights, biases)

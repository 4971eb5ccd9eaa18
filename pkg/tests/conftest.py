import numpy as np
import pytest

from papinn.network import MlpParams, NetworkShape, init_params

PAIRS = [(1e-1, 1e-2), (1e-2, 1e-3), (1e-3, 1e-4)]
ALL_PIDS = ["ex1", "ex2", "ex3", "ex4", "ex5", "ex6"]


def zero_params(input_dim=1, hidden=1, width=1):
    """All-zero network of the given architecture."""
    sizes = NetworkShape(input_dim, hidden, width).layer_sizes
    weights = [np.zeros((o, i)) for i, o in zip(sizes[:-1], sizes[1:])]
    biases = [np.zeros(o) for o in sizes[1:]]
    return MlpParams(sizes, weights, biases)


def unit_chain_params():
    """The [1, 1, 1] network with unit weights and zero biases: x -> tanh(x)."""
    return MlpParams((1, 1, 1), [np.array([[1.0]]), np.array([[1.0]])],
                     [np.zeros(1), np.zeros(1)])


@pytest.fixture
def small_net():
    return init_params(NetworkShape(1, 2, 5), seed=3)

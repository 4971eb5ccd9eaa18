"""Default experiment settings shared by the library and the CLI."""

from .network import NetworkShape

# Starting perturbation values for the continuation runs.
EPS_START = (0.3, 0.1)

# Geometric update ratios.
GEOM_RATIO_1 = 0.71
GEOM_RATIO_2 = 0.72

# Linear schedule step count per phase.
LINEAR_STEPS = 10

# Inner-loop convergence tolerance and restart cap per continuation step.
INNER_TOL = 1e-6
INNER_RESTARTS = 10

# Adaptive refinement defaults.
REFINE_POOL = 4096
REFINE_K = 128

# Evaluation grid sizes.
GRID_1D = 1001
GRID_2D = 201


def default_shape(spec):
    """Time-independent problems use 8x20, time-dependent 2x20."""
    hidden = 2 if spec.time_dependent else 8
    return NetworkShape(input_dim=spec.input_dim, hidden_layers=hidden, hidden_width=20)


def default_counts(spec):
    """(interior, boundary) collocation counts: 1D 1000/256, 2D 10000/1000."""
    if spec.spatial_dim == 1 and not spec.time_dependent:
        return 1000, 256
    if spec.spatial_dim == 1:
        return 1000, 256
    return 10000, 1000


def default_iters(spec):
    """Optimizer iteration budget per solve: 1000 for 1D, 4000 for 2D."""
    return 1000 if spec.spatial_dim == 1 else 4000

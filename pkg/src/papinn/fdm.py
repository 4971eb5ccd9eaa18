"""Upwind finite differences on a Shishkin mesh for the 1D steady problems.

The mesh is piecewise uniform with N/4 cells in each layer region
[0, tau_L] and [1 - tau_R, 1] and N/2 cells in between, with transition
widths tau = min(1/4, (2/mu) ln N) from the characteristic layer rates.
The convection term is differenced against the wind (backward for a
positive coefficient, forward for a negative one); diffusion uses the
standard non-uniform central second difference.  The tridiagonal system
is solved by the Thomas algorithm.
"""

from dataclasses import dataclass

import numpy as np

from .training import ConfigurationError


@dataclass(frozen=True)
class ShishkinMesh1D:
    n_cells: int
    tau_left: float
    tau_right: float
    nodes: np.ndarray


@dataclass
class TridiagonalSystem:
    sub: np.ndarray    # length n, sub[0] unused
    main: np.ndarray   # length n
    sup: np.ndarray    # length n, sup[-1] unused
    rhs: np.ndarray


def layer_rates(spec, pair):
    """Left/right boundary-layer rates for a 1D steady problem with a
    signed constant convection coefficient and unit reaction."""
    d = spec.conv_sign
    e1, e2 = pair.eps1, pair.eps2
    s = np.sqrt((e2 * d) ** 2 + 4.0 * e1)
    mu_l = (s - e2 * d) / (2.0 * e1)
    mu_r = (s + e2 * d) / (2.0 * e1)
    return mu_l, mu_r


def shishkin_mesh(n, pair, spec):
    """Piecewise-uniform layer-adapted mesh with N = n cells."""
    if n < 8 or n % 4 != 0:
        raise ConfigurationError(f"N must be >= 8 and divisible by 4, got {n}")
    mu_l, mu_r = layer_rates(spec, pair)
    tau_l = min(0.25, 2.0 * np.log(n) / mu_l)
    tau_r = min(0.25, 2.0 * np.log(n) / mu_r)
    q = n // 4
    nodes = np.concatenate([
        np.linspace(0.0, tau_l, q + 1),
        np.linspace(tau_l, 1.0 - tau_r, 2 * q + 1)[1:],
        np.linspace(1.0 - tau_r, 1.0, q + 1)[1:],
    ])
    return ShishkinMesh1D(n_cells=n, tau_left=tau_l, tau_right=tau_r, nodes=nodes)


def thomas_solve(system):
    """Forward elimination / back substitution for a tridiagonal system."""
    a, b, c, d = system.sub, system.main.copy(), system.sup, system.rhs.copy()
    n = b.size
    for i in range(1, n):
        if b[i - 1] == 0.0:
            raise ArithmeticError("zero pivot in tridiagonal elimination")
        m = a[i] / b[i - 1]
        b[i] -= m * c[i - 1]
        d[i] -= m * d[i - 1]
    if b[-1] == 0.0:
        raise ArithmeticError("zero pivot in tridiagonal elimination")
    x = np.empty(n)
    x[-1] = d[-1] / b[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (d[i] - c[i] * x[i + 1]) / b[i]
    return x


def assemble_upwind(spec, pair, mesh, source=None, bc=(0.0, 0.0)):
    """Discretize -e1 u'' + e2 d u' + u = h on the mesh (Dirichlet rows pinned)."""
    x = mesh.nodes
    n = x.size
    h = np.diff(x)
    e1, e2 = pair.eps1, pair.eps2
    d = spec.conv_sign
    rhs_fn = source if source is not None else (lambda xs: spec.source(xs[:, None], pair))

    sub = np.zeros(n)
    main = np.zeros(n)
    sup = np.zeros(n)
    rhs = np.zeros(n)

    main[0] = 1.0
    rhs[0] = bc[0]
    main[-1] = 1.0
    rhs[-1] = bc[1]

    hm, hp = h[:-1], h[1:]
    i = np.arange(1, n - 1)
    sub[i] = -2.0 * e1 / (hm * (hm + hp))
    sup[i] = -2.0 * e1 / (hp * (hm + hp))
    main[i] = 2.0 * e1 / (hm * hp) + 1.0   # unit reaction coefficient
    if d > 0:   # wind to the right: backward difference
        sub[i] += -e2 * d / hm
        main[i] += e2 * d / hm
    elif d < 0:  # wind to the left: forward difference
        sup[i] += e2 * d / hp
        main[i] += -e2 * d / hp
    rhs[i] = rhs_fn(x[i])
    return TridiagonalSystem(sub=sub, main=main, sup=sup, rhs=rhs)


def upwind_solve(spec, pair, mesh, source=None, bc=(0.0, 0.0)):
    """Nodal FDM solution of a 1D steady problem on the given mesh."""
    if spec.input_dim != 1 or spec.time_dependent:
        raise ConfigurationError(f"{spec.pid} is not a 1D steady problem")
    system = assemble_upwind(spec, pair, mesh, source=source, bc=bc)
    return thomas_solve(system)

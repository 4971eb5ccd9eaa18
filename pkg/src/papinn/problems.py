"""Benchmark problem registry for the two-parameter perturbation study.

Six problems on the unit interval/square:

  ex1  1D steady    -e1 u'' + e2 u' + u = cos(pi x)
  ex2  1D steady    -e1 u'' - e2 u' + u = exp(1 - x)
  ex3  1D parabolic u_t - e1 u_xx + e2 u_x + (1 - exp(-t)) u = h(x, t)
  ex4  2D elliptic  -e1 Lap(u) + e2 u_x + u = g(x, y)
  ex5  2D elliptic  -e1 Lap(u) + e2 u_x + u = h(x, y)
  ex6  2D parabolic u_t - e1 Lap(u) + e2 u_x + u = g(x, y, t)

All have homogeneous Dirichlet data (and zero initial data where time
appears) and a closed-form exact solution.  Sources for ex3..ex6 are
manufactured by applying the operator to the exact solution, so every
registered problem is exactly consistent; ex1/ex2 keep their stated
sources, which the exact formulas satisfy identically.

Boundary-layer exponentials are always evaluated with non-positive
exponents so nothing overflows for parameters down to (1e-6, 1e-7).
"""

import enum
from dataclasses import dataclass, field

import numpy as np

TIME_HORIZON = 1.0
_BOUNDARY_TOL = 1e-12


class DomainError(ValueError):
    """A point lies outside the domain (or off the boundary) it must be on."""


@dataclass(frozen=True)
class PerturbationPair:
    """The two small parameters driving the problem stiffness."""

    eps1: float
    eps2: float

    def __post_init__(self):
        if not (0.0 < self.eps1 <= 1.0):
            raise ValueError(f"eps1 must be in (0, 1], got {self.eps1}")
        if not (0.0 < self.eps2 <= 1.0):
            raise ValueError(f"eps2 must be in (0, 1], got {self.eps2}")


class RegimeLabel(enum.Enum):
    CONVECTION_DIFFUSION = "convection-diffusion"
    DIFFUSION_CONVECTION_REACTION = "diffusion-convection-reaction"
    REACTION_DIFFUSION = "reaction-diffusion"


def classify_regime(pair):
    """Deterministic partition of the three asymptotic regimes.

    eps2 >= 0.5 counts as the "eps2 = 1" convection-diffusion case;
    otherwise the boundary between the remaining regimes sits exactly at
    eps1 = eps2^2, with the tie going to reaction-diffusion.
    """
    if pair.eps2 >= 0.5:
        return RegimeLabel.CONVECTION_DIFFUSION
    if pair.eps1 < pair.eps2 ** 2:
        return RegimeLabel.DIFFUSION_CONVECTION_REACTION
    return RegimeLabel.REACTION_DIFFUSION


def characteristic_roots(pair, d_fn, r_fn, grid_n=1001):
    """Layer rates mu_L, mu_R: grid minima of the characteristic-root
    expressions (-/+ e2 d + sqrt(e2^2 d^2 + 4 e1 r)) / (2 e1) on [0, 1].
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    x = np.linspace(0.0, 1.0, grid_n)
    d = np.broadcast_to(np.asarray(d_fn(x), dtype=float), x.shape)
    r = np.broadcast_to(np.asarray(r_fn(x), dtype=float), x.shape)
    if np.any(r < 0):
        raise DomainError("reaction coefficient must be nonnegative on [0, 1]")
    disc = (pair.eps2 * d) ** 2 + 4.0 * pair.eps1 * r
    if np.any(disc <= 0):
        raise DomainError("characteristic discriminant is non-positive")
    s = np.sqrt(disc)
    mu_l = float(np.min((-pair.eps2 * d + s) / (2.0 * pair.eps1)))
    mu_r = float(np.min((pair.eps2 * d + s) / (2.0 * pair.eps1)))
    return mu_l, mu_r


# ---------------------------------------------------------------------------
# Problem container


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark problem: operator, data, exact solution."""

    pid: str
    input_dim: int
    time_dependent: bool
    # operator(value, first, second, pts, pair) -> L[u] pointwise, where
    # first/second are per-coordinate sequences; works on numpy arrays
    # and on tape Tensors alike.
    operator: callable = field(repr=False)
    exact_fn: callable = field(repr=False)        # (pts, pair) -> (n,)
    exact_derivs_fn: callable = field(repr=False)  # (pts, pair) -> dict
    source_fn: callable = field(default=None, repr=False)
    conv_sign: float = 0.0   # signed constant convection coefficient (1D steady)

    @property
    def spatial_dim(self):
        return self.input_dim - 1 if self.time_dependent else self.input_dim

    def source(self, pts, pair):
        """Right-hand side; manufactured from the exact solution if the
        problem does not carry an explicit one."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        if self.source_fn is not None:
            return self.source_fn(pts, pair)
        dv = self.exact_derivs_fn(pts, pair)
        first = [dv["first"][i] for i in range(self.input_dim)]
        second = [dv["second"][i] for i in range(self.input_dim)]
        return self.operator(dv["value"], first, second, pts, pair)

    def residual_batch(self, value, first, second, pts, pair):
        """L[u] - source at pts; value/first/second may be Tensors."""
        return self.operator(value, first, second, pts, pair) - self.source(pts, pair)


def residual(spec, jet, point, pair):
    """PDE residual at one point from a Jet2 of the network."""
    point = np.asarray(point, dtype=float)
    if point.shape != (spec.input_dim,):
        raise ValueError(f"point has shape {point.shape}, expected ({spec.input_dim},)")
    pts = point[None, :]
    first = [np.array([jet.grad[i]]) for i in range(spec.input_dim)]
    second = [np.array([jet.lap_terms[i]]) for i in range(spec.input_dim)]
    value = np.array([jet.value])
    return float(spec.residual_batch(value, first, second, pts, pair)[0])


def exact_solution(spec, point, pair):
    """Closed-form exact solution at one point of the closed domain."""
    point = np.asarray(point, dtype=float)
    if point.shape != (spec.input_dim,):
        raise ValueError(f"point has shape {point.shape}, expected ({spec.input_dim},)")
    if np.any(point < 0.0) or np.any(point > 1.0):
        raise DomainError(f"point {point} outside the closed unit domain")
    return float(spec.exact_fn(point[None, :], pair)[0])


def exact_batch(spec, pts, pair):
    return spec.exact_fn(np.atleast_2d(np.asarray(pts, dtype=float)), pair)


def analytic_residual(spec, pts, pair):
    """Residual of the exact solution, from its analytic derivatives."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    dv = spec.exact_derivs_fn(pts, pair)
    first = [dv["first"][i] for i in range(spec.input_dim)]
    second = [dv["second"][i] for i in range(spec.input_dim)]
    return spec.residual_batch(dv["value"], first, second, pts, pair)


def _on_spatial_boundary(spec, point):
    sd = spec.spatial_dim
    return any(
        abs(point[i]) <= _BOUNDARY_TOL or abs(point[i] - 1.0) <= _BOUNDARY_TOL
        for i in range(sd)
    )


def boundary_values(spec, point):
    """Prescribed Dirichlet datum (zero for every registered problem).

    For time-dependent problems the t = 0 slice counts as boundary too
    (initial data are folded into the boundary loss).
    """
    point = np.asarray(point, dtype=float)
    if point.shape != (spec.input_dim,):
        raise ValueError(f"point has shape {point.shape}, expected ({spec.input_dim},)")
    on_lateral = _on_spatial_boundary(spec, point)
    on_initial = spec.time_dependent and abs(point[-1]) <= _BOUNDARY_TOL
    if not (on_lateral or on_initial):
        raise DomainError(f"point {point} is not on the boundary")
    return 0.0


def initial_values(spec, point):
    """Prescribed initial datum at t = 0 (zero for ex3 and ex6)."""
    if not spec.time_dependent:
        raise DomainError(f"{spec.pid} is not time-dependent")
    point = np.asarray(point, dtype=float)
    if abs(point[-1]) > _BOUNDARY_TOL:
        raise DomainError(f"point {point} is not on the t = 0 slice")
    return 0.0


# ---------------------------------------------------------------------------
# 1D steady problems


def _mu_constants(pair):
    """Layer rates for unit convection/reaction coefficients."""
    e1, e2 = pair.eps1, pair.eps2
    s = np.sqrt(e2 * e2 + 4.0 * e1)
    return (-e2 + s) / (2.0 * e1), (e2 + s) / (2.0 * e1)


def _ex1_coeffs(pair):
    e1, e2 = pair.eps1, pair.eps2
    mu_l, mu_r = _mu_constants(pair)
    p = e1 * np.pi ** 2 + 1.0
    den = (e2 * np.pi) ** 2 + p * p
    a1 = p / den
    b1 = e2 * np.pi / den
    lay = 1.0 - np.exp(-(mu_l + mu_r))
    a2 = -a1 * (1.0 + np.exp(-mu_r)) / lay
    b2 = a1 * (1.0 + np.exp(-mu_l)) / lay
    return a1, a2, b1, b2, mu_l, mu_r


def _ex1_profile(x, pair):
    """Value, first and second derivative of the ex1 exact solution."""
    a1, a2, b1, b2, mu_l, mu_r = _ex1_coeffs(pair)
    el = np.exp(-mu_l * x)
    er = np.exp(-mu_r * (1.0 - x))
    c, s = np.cos(np.pi * x), np.sin(np.pi * x)
    u = a1 * c + a2 * el + b1 * s + b2 * er
    du = -a1 * np.pi * s - a2 * mu_l * el + b1 * np.pi * c + b2 * mu_r * er
    ddu = (-a1 * np.pi ** 2 * c + a2 * mu_l ** 2 * el
           - b1 * np.pi ** 2 * s + b2 * mu_r ** 2 * er)
    return u, du, ddu


def _ex1_exact(pts, pair):
    return _ex1_profile(pts[:, 0], pair)[0]


def _ex1_derivs(pts, pair):
    u, du, ddu = _ex1_profile(pts[:, 0], pair)
    return {"value": u, "first": [du], "second": [ddu]}


def _ex1_operator(value, first, second, pts, pair):
    return -pair.eps1 * second[0] + pair.eps2 * first[0] + value


def _ex1_source(pts, pair):
    return np.cos(np.pi * pts[:, 0])


def _ex2_profile(x, pair):
    e1, e2 = pair.eps1, pair.eps2
    s = np.sqrt(e2 * e2 + 4.0 * e1)
    m1 = (e2 - s) / (2.0 * e1)   # < 0, right layer
    m2 = (e2 + s) / (2.0 * e1)   # > 0, left layer
    den = 1.0 - np.exp(-s / e1)
    c = 1.0 / (e1 - e2 - 1.0)
    p = (np.e - np.exp(m1)) / den
    q = (1.0 - np.exp(1.0 - m2)) / den
    el = np.exp(-m2 * x)
    er = np.exp(m1 * (1.0 - x))
    ex = np.exp(1.0 - x)
    u = c * (p * el - ex + q * er)
    du = c * (-m2 * p * el + ex - m1 * q * er)
    ddu = c * (m2 * m2 * p * el - ex + m1 * m1 * q * er)
    return u, du, ddu


def _ex2_exact(pts, pair):
    return _ex2_profile(pts[:, 0], pair)[0]


def _ex2_derivs(pts, pair):
    u, du, ddu = _ex2_profile(pts[:, 0], pair)
    return {"value": u, "first": [du], "second": [ddu]}


def _ex2_operator(value, first, second, pts, pair):
    return -pair.eps1 * second[0] - pair.eps2 * first[0] + value


def _ex2_source(pts, pair):
    return np.exp(1.0 - pts[:, 0])


# ---------------------------------------------------------------------------
# ex3: parabolic version of ex1, coordinates (x, t).
# Source manufactured from the exact solution (the time-modulated ex1
# profile does not satisfy the equation with the plain separable source).


def _ex3_exact(pts, pair):
    x, t = pts[:, 0], pts[:, 1]
    u, _, _ = _ex1_profile(x, pair)
    return (1.0 - np.exp(-t)) * u


def _ex3_derivs(pts, pair):
    x, t = pts[:, 0], pts[:, 1]
    u, du, ddu = _ex1_profile(x, pair)
    f = 1.0 - np.exp(-t)
    df = np.exp(-t)
    return {
        "value": f * u,
        "first": [f * du, df * u],
        "second": [f * ddu, -df * u],
    }


def _ex3_operator(value, first, second, pts, pair):
    react = 1.0 - np.exp(-pts[:, 1])
    return first[1] - pair.eps1 * second[0] + pair.eps2 * first[0] + react * value


# ---------------------------------------------------------------------------
# 2D problems: products of one-dimensional layer factors.


def _xy_factors(pts_x, pts_y, pair):
    """Factors of the 2D layer profile and their derivatives.

    X(x) = (1 - exp(-a1 x)) (1 - exp(-a2 (1 - x))),
    Y(y) = (1 - exp(-y/sqrt(e1))) (1 - exp(-(1 - y)/sqrt(e1))).
    """
    e1, e2 = pair.eps1, pair.eps2
    root = np.sqrt(1.0 + 16.0 * e1 / (e2 * e2))
    a1 = e2 * (root - 1.0) / (2.0 * e1)
    a2 = e2 * (root + 1.0) / (2.0 * e1)
    b = 1.0 / np.sqrt(e1)

    e1x = np.exp(-a1 * pts_x)
    e2x = np.exp(-a2 * (1.0 - pts_x))
    X = (1.0 - e1x) * (1.0 - e2x)
    dX = a1 * e1x * (1.0 - e2x) - a2 * e2x * (1.0 - e1x)
    ddX = (-a1 * a1 * e1x * (1.0 - e2x) - a2 * a2 * e2x * (1.0 - e1x)
           - 2.0 * a1 * a2 * e1x * e2x)

    g1 = np.exp(-b * pts_y)
    g2 = np.exp(-b * (1.0 - pts_y))
    Y = (1.0 - g1) * (1.0 - g2)
    dY = b * g1 * (1.0 - g2) - b * g2 * (1.0 - g1)
    ddY = -b * b * (g1 * (1.0 - g2) + g2 * (1.0 - g1) + 2.0 * g1 * g2)
    return X, dX, ddX, Y, dY, ddY


def _ex4_exact(pts, pair):
    X, _, _, Y, _, _ = _xy_factors(pts[:, 0], pts[:, 1], pair)
    return 0.25 * X * Y


def _ex4_derivs(pts, pair):
    X, dX, ddX, Y, dY, ddY = _xy_factors(pts[:, 0], pts[:, 1], pair)
    return {
        "value": 0.25 * X * Y,
        "first": [0.25 * dX * Y, 0.25 * X * dY],
        "second": [0.25 * ddX * Y, 0.25 * X * ddY],
    }


def _elliptic_operator(value, first, second, pts, pair):
    return -pair.eps1 * (second[0] + second[1]) + pair.eps2 * first[0] + value


def _ex5_exact(pts, pair):
    x = pts[:, 0]
    X, _, _, Y, _, _ = _xy_factors(x, pts[:, 1], pair)
    q = 0.25 * (1.0 + 0.5 * np.sin(8.0 * x))
    return q * X * Y


def _ex5_derivs(pts, pair):
    x = pts[:, 0]
    X, dX, ddX, Y, dY, ddY = _xy_factors(x, pts[:, 1], pair)
    q = 0.25 * (1.0 + 0.5 * np.sin(8.0 * x))
    dq = np.cos(8.0 * x)
    ddq = -8.0 * np.sin(8.0 * x)
    qx = dq * X + q * dX
    qxx = ddq * X + 2.0 * dq * dX + q * ddX
    return {
        "value": q * X * Y,
        "first": [qx * Y, q * X * dY],
        "second": [qxx * Y, q * X * ddY],
    }


def _ex6_exact(pts, pair):
    X, _, _, Y, _, _ = _xy_factors(pts[:, 0], pts[:, 1], pair)
    return 0.25 * (1.0 - np.exp(-pts[:, 2])) * X * Y


def _ex6_derivs(pts, pair):
    X, dX, ddX, Y, dY, ddY = _xy_factors(pts[:, 0], pts[:, 1], pair)
    f = 1.0 - np.exp(-pts[:, 2])
    df = np.exp(-pts[:, 2])
    base = 0.25 * X * Y
    return {
        "value": f * base,
        "first": [0.25 * f * dX * Y, 0.25 * f * X * dY, df * base],
        "second": [0.25 * f * ddX * Y, 0.25 * f * X * ddY, -df * base],
    }


def _ex6_operator(value, first, second, pts, pair):
    return (first[2] - pair.eps1 * (second[0] + second[1])
            + pair.eps2 * first[0] + value)


PROBLEMS = {
    "ex1": ProblemSpec("ex1", 1, False, _ex1_operator, _ex1_exact, _ex1_derivs,
                       source_fn=_ex1_source, conv_sign=1.0),
    "ex2": ProblemSpec("ex2", 1, False, _ex2_operator, _ex2_exact, _ex2_derivs,
                       source_fn=_ex2_source, conv_sign=-1.0),
    "ex3": ProblemSpec("ex3", 2, True, _ex3_operator, _ex3_exact, _ex3_derivs),
    "ex4": ProblemSpec("ex4", 2, False, _elliptic_operator, _ex4_exact, _ex4_derivs),
    "ex5": ProblemSpec("ex5", 2, False, _elliptic_operator, _ex5_exact, _ex5_derivs),
    "ex6": ProblemSpec("ex6", 3, True, _ex6_operator, _ex6_exact, _ex6_derivs),
}


def get_problem(pid):
    try:
        return PROBLEMS[pid.lower()]
    except KeyError:
        raise KeyError(f"unknown problem id {pid!r}; choose from {sorted(PROBLEMS)}") from None

"""Collocation-point generation: Latin hypercube interior sampling,
boundary/initial sampling, and residual-driven adaptive refinement.

All sampling is driven by numpy's PCG64 generator seeded explicitly, so
point sets are reproducible across runs and platforms.
"""

from dataclasses import dataclass

import numpy as np

from .jets import batch_jet

# Keeps stratified samples strictly inside their stratum end points.
_EDGE = 1e-12


@dataclass
class TrainingSet:
    """Interior and boundary collocation points with boundary data."""

    interior: np.ndarray        # (n_o, dim)
    boundary: np.ndarray        # (n_b, dim)
    boundary_data: np.ndarray   # (n_b,) prescribed Dirichlet/initial values

    @property
    def n_interior(self):
        return self.interior.shape[0]

    @property
    def n_boundary(self):
        return self.boundary.shape[0]


def _stratified_1d(n, rng):
    """One sample per stratum [j/n, (j+1)/n), shuffled across strata."""
    perm = rng.permutation(n)
    u = np.clip(rng.random(n), _EDGE, 1.0 - _EDGE)
    return (perm + u) / n


def lhs_interior(n, dim, seed):
    """n Latin-hypercube points in the open unit cube of dimension dim."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2 or 3, got {dim}")
    rng = np.random.default_rng(seed)
    pts = np.empty((n, dim))
    for ax in range(dim):
        pts[:, ax] = _stratified_1d(n, rng)
    return pts


def sample_boundary(spec, n, seed):
    """Boundary (and initial-slice) collocation points with their data.

    Points are split in equal proportion across all boundary faces; the
    remainder goes to the leading faces.  Positions within a face are
    stratified per free coordinate.  A 1D steady problem has only the
    two end points, so at most those two are returned.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    dim = spec.input_dim

    if dim == 1:
        # The whole boundary is {0, 1}; duplicates are never useful.
        k = min(n, 2)
        pts = np.array([[0.0], [1.0]])[:k]
        return pts, np.zeros(k)

    faces = _faces(spec)
    base, extra = divmod(n, len(faces))
    pts = []
    for f, face in enumerate(faces):
        m = base + (1 if f < extra else 0)
        if m == 0:
            continue
        block = np.empty((m, dim))
        for ax in range(dim):
            fixed = face.get(ax)
            block[:, ax] = fixed if fixed is not None else _stratified_1d(m, rng)
        pts.append(block)
    pts = np.vstack(pts)
    return pts, np.zeros(pts.shape[0])


def _faces(spec):
    """Boundary faces as {axis: fixed value} maps.

    Time-dependent problems add the initial slice t = 0 (last axis) to
    the lateral faces; the t = T face stays open.
    """
    sd = spec.spatial_dim
    faces = []
    for ax in range(sd):
        faces.append({ax: 0.0})
        faces.append({ax: 1.0})
    if spec.time_dependent:
        faces.append({spec.input_dim - 1: 0.0})
    return faces


def adaptive_refine(params, spec, pair, pool_n, k, seed, existing=None):
    """Top-k |residual| points from a fresh Latin-hypercube pool.

    Ties are broken by pool index order.  Candidates within 1e-12 of an
    existing point (or an already selected one) are skipped and the next
    ranked candidate is used instead.
    """
    if k < 0 or k > pool_n:
        raise ValueError(f"need 0 <= k <= pool_n, got k={k}, pool_n={pool_n}")
    if k == 0:
        return np.empty((0, spec.input_dim))
    pool = lhs_interior(pool_n, spec.input_dim, seed)
    values, grads, laps = batch_jet(params, pool)
    first = [grads[:, i] for i in range(spec.input_dim)]
    second = [laps[:, i] for i in range(spec.input_dim)]
    res = np.abs(spec.residual_batch(values, first, second, pool, pair))
    order = np.argsort(-res, kind="stable")
    taken = [] if existing is None else [np.asarray(existing, dtype=float)]
    out = []
    for idx in order:
        if len(out) == k:
            break
        cand = pool[idx]
        if taken and any(np.any(np.all(np.abs(t - cand) <= 1e-12, axis=1)) for t in taken):
            continue
        out.append(cand)
        taken.append(cand[None, :])
    return np.array(out)


def select_topk_by_residual(pool, abs_residuals, k):
    """Pure selection rule, exposed for direct testing: the k pool points
    of largest |residual|, index order breaking ties."""
    order = np.argsort(-np.asarray(abs_residuals, dtype=float), kind="stable")
    return np.asarray(pool)[order[:k]]


def make_training_set(spec, n_interior, n_boundary, seed):
    """Initial training set: LHS interior plus boundary sample."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    s_int, s_bnd = ss.spawn(2)
    interior = lhs_interior(n_interior, spec.input_dim, s_int)
    boundary, data = sample_boundary(spec, n_boundary, s_bnd)
    return TrainingSet(interior=interior, boundary=boundary, boundary_data=data)

import numpy as np
import pytest

from papinn.fdm import (ShishkinMesh1D, assemble_upwind, layer_rates,
                        shishkin_mesh, thomas_solve, upwind_solve)
from papinn.problems import PerturbationPair, exact_batch, get_problem
from papinn.reporting import linf_err
from papinn.training import ConfigurationError


class TestShishkinMesh:
    def test_clamped_transitions(self):
        spec = get_problem("ex1")
        mesh = shishkin_mesh(8, PerturbationPair(1.0, 0.1), spec)
        assert mesh.tau_left == 0.25
        assert mesh.tau_right == 0.25
        # interior cells of width (1 - 1/2) / 4 = 1/8
        inner = np.diff(mesh.nodes[2:7])
        assert np.allclose(inner, 0.125, atol=1e-15)

    def test_construction_invariants(self):
        spec = get_problem("ex1")
        for n in (8, 64, 256):
            mesh = shishkin_mesh(n, PerturbationPair(1e-3, 1e-4), spec)
            assert mesh.nodes[0] == 0.0
            assert mesh.nodes[-1] == 1.0
            assert mesh.nodes.size == n + 1
            assert np.all(np.diff(mesh.nodes) > 0)
            assert 0.0 < mesh.tau_left <= 0.25
            assert 0.0 < mesh.tau_right <= 0.25

    def test_piecewise_uniform(self):
        spec = get_problem("ex1")
        n = 64
        mesh = shishkin_mesh(n, PerturbationPair(1e-3, 1e-4), spec)
        h = np.diff(mesh.nodes)
        q = n // 4
        for block in (h[:q], h[q:3 * q], h[3 * q:]):
            assert np.allclose(block, block[0], rtol=1e-12)

    @pytest.mark.parametrize("n", [6, 10, 13])
    def test_rejects_bad_n(self, n):
        spec = get_problem("ex1")
        with pytest.raises(ConfigurationError):
            shishkin_mesh(n, PerturbationPair(0.1, 0.1), spec)

    def test_layer_rates_mirror_for_ex2(self):
        pair = PerturbationPair(1e-2, 1e-3)
        l1 = layer_rates(get_problem("ex1"), pair)
        l2 = layer_rates(get_problem("ex2"), pair)
        assert l1[0] == pytest.approx(l2[1], rel=1e-15)
        assert l1[1] == pytest.approx(l2[0], rel=1e-15)


class TestThomasSolve:
    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(0)
        for n in (3, 10, 50):
            sub = rng.uniform(-1, 1, n)
            sup = rng.uniform(-1, 1, n)
            main = np.abs(sub) + np.abs(sup) + rng.uniform(1.0, 2.0, n)
            rhs = rng.uniform(-1, 1, n)
            from papinn.fdm import TridiagonalSystem
            x = thomas_solve(TridiagonalSystem(sub, main, sup, rhs))
            dense = np.diag(main) + np.diag(sub[1:], -1) + np.diag(sup[:-1], 1)
            assert np.max(np.abs(x - np.linalg.solve(dense, rhs))) <= 1e-10


class TestUpwindSolve:
    def test_maximum_principle(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(1e-2, 1e-3)
        mesh = shishkin_mesh(64, pair, spec)
        u = upwind_solve(spec, pair, mesh, source=lambda x: np.zeros_like(x))
        assert np.max(np.abs(u)) == 0.0

    def test_exact_on_linear_solution(self):
        # Manufactured: u(x) = x solves -e1*0 + e2*1 + x = h with h = e2 + x.
        spec = get_problem("ex1")
        pair = PerturbationPair(1e-2, 1e-3)
        mesh = shishkin_mesh(128, pair, spec)
        u = upwind_solve(spec, pair, mesh,
                         source=lambda x: pair.eps2 + x, bc=(0.0, 1.0))
        assert np.max(np.abs(u - mesh.nodes)) <= 1e-12

    def test_exact_on_linear_solution_ex2(self):
        # u(x) = x with the negative-wind operator: h = -e2 + x.
        spec = get_problem("ex2")
        pair = PerturbationPair(1e-2, 1e-3)
        mesh = shishkin_mesh(128, pair, spec)
        u = upwind_solve(spec, pair, mesh,
                         source=lambda x: -pair.eps2 + x, bc=(0.0, 1.0))
        assert np.max(np.abs(u - mesh.nodes)) <= 1e-12

    def test_diagonal_dominance(self):
        spec = get_problem("ex2")
        pair = PerturbationPair(1e-3, 1e-4)
        mesh = shishkin_mesh(64, pair, spec)
        sysm = assemble_upwind(spec, pair, mesh)
        assert np.all(np.abs(sysm.main) >= np.abs(sysm.sub) + np.abs(sysm.sup))

    def test_rejects_non_1d(self):
        spec = get_problem("ex4")
        pair = PerturbationPair(1e-2, 1e-3)
        mesh = shishkin_mesh(16, pair, get_problem("ex1"))
        with pytest.raises(ConfigurationError):
            upwind_solve(spec, pair, mesh)

    @pytest.mark.parametrize("pid", ["ex1", "ex2"])
    def test_resolves_layers(self, pid):
        spec = get_problem(pid)
        pair = PerturbationPair(1e-2, 1e-3)
        mesh = shishkin_mesh(256, pair, spec)
        u = upwind_solve(spec, pair, mesh)
        exact = exact_batch(spec, mesh.nodes[:, None], pair)
        assert linf_err(exact, u) <= 5e-4

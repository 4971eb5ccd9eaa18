import numpy as np
import pytest

from papinn.network import MlpParams, NetworkShape, flatten, init_params, unflatten
from papinn.problems import PerturbationPair, get_problem
from papinn.sampling import TrainingSet, make_training_set
from papinn.training import (ConfigurationError, LossWeights, OptimConfig,
                             make_objective, minimize, relative_change,
                             total_loss, train_standard_pinn)

from conftest import zero_params


def point_set(interior, boundary=None):
    interior = np.atleast_2d(np.asarray(interior, dtype=float))
    if boundary is None:
        boundary = np.array([[0.0], [1.0]])
    boundary = np.atleast_2d(np.asarray(boundary, dtype=float))
    return TrainingSet(interior=interior, boundary=boundary,
                       boundary_data=np.zeros(boundary.shape[0]))


class TestLossWeights:
    def test_defaults(self):
        w = LossWeights()
        assert (w.theta1, w.theta2) == (1.0, 1.0)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            LossWeights(-1.0, 1.0)

    def test_rejects_both_zero(self):
        with pytest.raises(ValueError):
            LossWeights(0.0, 0.0)


class TestOptimConfig:
    def test_rejects_bad_wolfe_constants(self):
        with pytest.raises(ValueError):
            OptimConfig(c1=0.9, c2=0.1)


class TestTotalLoss:
    def setup_method(self):
        self.spec = get_problem("ex1")
        self.pair = PerturbationPair(0.3, 0.1)

    def test_zero_network_midpoint_operator_only(self):
        p = zero_params()
        tset = point_set([[0.5]])
        loss = total_loss(p, tset, self.spec, self.pair, LossWeights(1.0, 0.0))
        assert loss == pytest.approx(0.0, abs=1e-28)

    def test_zero_network_boundary_only(self):
        p = zero_params()
        tset = point_set([[0.5]])
        assert total_loss(p, tset, self.spec, self.pair, LossWeights(0.0, 1.0)) == 0.0

    def test_linear_in_weights(self):
        p = init_params(NetworkShape(1, 2, 5), 0)
        tset = make_training_set(self.spec, 20, 2, seed=0)
        l1 = total_loss(p, tset, self.spec, self.pair, LossWeights(1.0, 1.0))
        l2 = total_loss(p, tset, self.spec, self.pair, LossWeights(2.0, 2.0))
        assert l2 == pytest.approx(2.0 * l1, rel=1e-14)

    def test_decomposition(self):
        p = init_params(NetworkShape(1, 2, 5), 1)
        tset = make_training_set(self.spec, 20, 2, seed=0)
        both = total_loss(p, tset, self.spec, self.pair, LossWeights(1.0, 1.0))
        op = total_loss(p, tset, self.spec, self.pair, LossWeights(1.0, 0.0))
        bd = total_loss(p, tset, self.spec, self.pair, LossWeights(0.0, 1.0))
        assert both == pytest.approx(op + bd, abs=1e-12)

    def test_empty_interior_rejected(self):
        p = zero_params()
        tset = TrainingSet(np.empty((0, 1)), np.array([[0.0]]), np.zeros(1))
        with pytest.raises(ConfigurationError):
            total_loss(p, tset, self.spec, self.pair, LossWeights(1.0, 1.0))

    def test_objective_matches_total_loss(self):
        p = init_params(NetworkShape(1, 2, 5), 2)
        tset = make_training_set(self.spec, 15, 2, seed=1)
        w = LossWeights(1.0, 1.0)
        obj = make_objective(tset, self.spec, self.pair, w)
        f, g = obj(p)
        assert f == pytest.approx(total_loss(p, tset, self.spec, self.pair, w), rel=1e-14)
        assert g.size == p.n_params


class TestRelativeChange:
    def test_identical(self):
        assert relative_change([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_from_zero(self):
        assert relative_change([3.0, 4.0], [0.0, 0.0]) == 1.0

    def test_hand_value(self):
        assert relative_change([2.0, 0.0], [1.0, 0.0]) == 0.5

    def test_zero_new_is_infinite(self):
        assert relative_change([0.0, 0.0], [1.0, 0.0]) == np.inf

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            relative_change([1.0], [1.0, 2.0])


def scalar_objective(f_and_g):
    """Wrap an R^n objective as an MlpParams objective."""
    def objective(params):
        theta = flatten(params)
        f, g = f_and_g(theta)
        return f, g
    return objective


class TestMinimize:
    def test_quadratic(self):
        # f(theta) = |theta - 3|^2 over the 2 parameters of a [1,1] net.
        target = np.array([3.0, 3.0])
        obj = scalar_objective(lambda t: (float(np.sum((t - target) ** 2)),
                                          2.0 * (t - target)))
        init = MlpParams((1, 1), [np.zeros((1, 1))], [np.zeros(1)])
        params, report = minimize(obj, init, OptimConfig(max_iters=20))
        assert np.max(np.abs(flatten(params) - target)) <= 1e-8
        assert report.iterations_used <= 5

    def test_already_converged(self):
        obj = scalar_objective(lambda t: (0.0, np.zeros_like(t)))
        init = init_params(NetworkShape(1, 1, 1), 0)
        params, report = minimize(obj, init, OptimConfig())
        assert report.iterations_used == 0
        assert report.termination == "grad_tol"
        assert params == init

    def test_rosenbrock(self):
        def f_and_g(t):
            x, y = t
            f = (1 - x) ** 2 + 100 * (y - x * x) ** 2
            g = np.array([-2 * (1 - x) - 400 * x * (y - x * x),
                          200 * (y - x * x)])
            return float(f), g

        init = MlpParams((1, 1), [np.array([[-1.2]])], [np.array([1.0])])
        params, report = minimize(scalar_objective(f_and_g), init,
                                  OptimConfig(max_iters=200))
        theta = flatten(params)
        assert np.max(np.abs(theta - 1.0)) <= 1e-6
        assert f_and_g(theta)[0] < 1e-12

    def test_monotone_history(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(0.3, 0.1)
        tset = make_training_set(spec, 50, 2, seed=0)
        obj = make_objective(tset, spec, pair, LossWeights())
        init = init_params(NetworkShape(1, 2, 8), 0)
        _, report = minimize(obj, init, OptimConfig(max_iters=50))
        hist = np.array(report.loss_history)
        assert np.all(np.diff(hist) <= 0.0)
        assert report.final_loss == hist[-1]

    def test_respects_max_iters(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(0.3, 0.1)
        tset = make_training_set(spec, 30, 2, seed=0)
        obj = make_objective(tset, spec, pair, LossWeights())
        init = init_params(NetworkShape(1, 1, 4), 0)
        _, report = minimize(obj, init, OptimConfig(max_iters=7))
        assert report.iterations_used <= 7


class TestTrainStandardPinn:
    def test_deterministic(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(0.3, 0.1)
        tset = make_training_set(spec, 40, 2, seed=0)
        cfg = OptimConfig(max_iters=25)
        shape = NetworkShape(1, 2, 8)
        p1, r1 = train_standard_pinn(spec, pair, tset, LossWeights(), cfg, 0, shape)
        p2, r2 = train_standard_pinn(spec, pair, tset, LossWeights(), cfg, 0, shape)
        assert p1 == p2
        assert r1.loss_history == r2.loss_history

    def test_reduces_loss(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(0.3, 0.1)
        tset = make_training_set(spec, 60, 2, seed=1)
        _, report = train_standard_pinn(spec, pair, tset, LossWeights(),
                                        OptimConfig(max_iters=100), 1,
                                        NetworkShape(1, 2, 10))
        assert report.final_loss < report.loss_history[0] * 1e-2

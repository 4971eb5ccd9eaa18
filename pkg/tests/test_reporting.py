import csv

import numpy as np
import pytest

from papinn.network import NetworkShape, init_params, load_checkpoint
from papinn.problems import PerturbationPair, exact_batch, get_problem
from papinn.reporting import (ErrorReport, ExperimentConfig,
                              UnsupportedOperationError, evaluate,
                              evaluation_grid, linf_err, parse_config, rel_l2,
                              run_experiment)
from papinn.training import ConfigurationError

from conftest import zero_params


class TestRelL2:
    def test_identical(self):
        assert rel_l2([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_hand_values(self):
        assert rel_l2([3.0, 4.0], [0.0, 0.0]) == 1.0
        assert rel_l2([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]) == 1.0

    def test_scale_invariant(self):
        rng = np.random.default_rng(0)
        v, vh = rng.random(50), rng.random(50)
        assert abs(rel_l2(3.7 * v, 3.7 * vh) - rel_l2(v, vh)) <= 1e-12

    def test_zero_reference_rejected(self):
        with pytest.raises(ZeroDivisionError):
            rel_l2([0.0, 0.0], [1.0, 2.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            rel_l2([1.0], [1.0, 2.0])


class TestLinfErr:
    def test_identical(self):
        assert linf_err([1.0, 5.0], [1.0, 5.0]) == 0.0

    def test_hand_value(self):
        assert linf_err([1.0, 5.0], [1.0, 2.0]) == 3.0

    def test_antisymmetric_perturbation(self):
        v = np.array([0.3, 0.9])
        assert linf_err(v, v + np.array([-0.2, 0.2])) == pytest.approx(0.2, abs=1e-15)


class TestEvaluationGrid:
    def test_1d_inclusive(self):
        grid = evaluation_grid(get_problem("ex1"), 5)
        assert np.array_equal(grid[:, 0], np.linspace(0, 1, 5))

    def test_2d_shape(self):
        grid = evaluation_grid(get_problem("ex4"), 11)
        assert grid.shape == (121, 2)
        assert grid[0].tolist() == [0.0, 0.0]
        assert grid[-1].tolist() == [1.0, 1.0]

    def test_time_dependent_final_slice(self):
        grid = evaluation_grid(get_problem("ex3"), 7)
        assert grid.shape == (7, 2)
        assert np.all(grid[:, 1] == 1.0)


class TestEvaluate:
    def test_oracle_as_predictor(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(1e-2, 1e-3)
        grid = evaluation_grid(spec, 101)
        exact = exact_batch(spec, grid, pair)
        report = evaluate(zero_params(), spec, pair, grid_n=101, predictions=exact)
        assert report.e2 == 0.0
        assert report.e_inf == 0.0

    def test_grid_n_two_matches_boundary(self):
        spec = get_problem("ex1")
        pair = PerturbationPair(1e-2, 1e-3)
        report = evaluate(zero_params(), spec, pair, grid_n=2)
        assert report.e_inf <= 1e-14

    def test_time_dependent_eval_time(self):
        spec = get_problem("ex3")
        pair = PerturbationPair(1e-2, 1e-3)
        p = init_params(NetworkShape(2, 1, 4), 0)
        report = evaluate(p, spec, pair, grid_n=11)
        assert report.eval_time == 1.0


class TestParseConfig:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# experiment\n"
            "problem = ex1\n"
            "eps1 = 1e-2\n"
            "eps2 = 1e-3\n"
            "method = pinn\n"
            "iters = 5  # tiny\n"
            "seed = 4\n"
        )
        cfg = parse_config(path)
        assert cfg.problem == "ex1"
        assert cfg.eps1 == 1e-2
        assert cfg.method == "pinn"
        assert cfg.iters == 5
        assert cfg.seed == 4

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("problem=ex1\neps1=0.1\neps2=0.1\nlearning_rate=0.1\n")
        with pytest.raises(ConfigurationError):
            parse_config(path)

    def test_missing_required(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("problem=ex1\n")
        with pytest.raises(ConfigurationError):
            parse_config(path)

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("problem ex1\n")
        with pytest.raises(ConfigurationError):
            parse_config(path)


def tiny_config(out_dir, **kw):
    base = dict(problem="ex1", eps1=1e-1, eps2=1e-2, method="pinn",
                schedule_steps=0, eps1_start=0.3, eps2_start=0.1,
                hidden_layers=1, hidden_width=4, n_interior=16, n_boundary=2,
                iters=3, refine_pool=32, refine_k=4, seed=0, grid_n=11,
                out_dir=str(out_dir))
    base.update(kw)
    return ExperimentConfig(**base)


class TestRunExperiment:
    def test_pinn_artifacts(self, tmp_path):
        cfg = tiny_config(tmp_path)
        report = run_experiment(cfg)
        assert isinstance(report, ErrorReport)
        assert (tmp_path / "errors.csv").exists()
        assert (tmp_path / "loss.csv").exists()
        assert (tmp_path / "solution.csv").exists()
        assert (tmp_path / "model.ckpt").exists()
        assert not (tmp_path / "history.csv").exists()

    def test_pa_pinn_writes_history(self, tmp_path):
        cfg = tiny_config(tmp_path, method="pa_pinn")
        run_experiment(cfg)
        lines = (tmp_path / "history.csv").read_text().strip().splitlines()
        assert lines[0] == "step,eps1,eps2,inner_loss,e2,n_interior"
        assert len(lines) == 4  # 3 continuation steps

    def test_determinism_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_experiment(tiny_config(a, method="pa_pinn"))
        run_experiment(tiny_config(b, method="pa_pinn"))
        for name in ("errors.csv", "history.csv", "loss.csv", "solution.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_errors_csv_schema_and_round_trip(self, tmp_path):
        cfg = tiny_config(tmp_path)
        report = run_experiment(cfg)
        with open(tmp_path / "errors.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0]) == ["method", "example", "eps1", "eps2", "e2",
                                 "e_inf", "seed", "iters"]
        row = rows[0]
        assert row["method"] == "pinn" and row["example"] == "ex1"
        # values round-trip at the emitted 6-significant-digit precision
        assert float(row["e2"]) == pytest.approx(report.e2, rel=1e-4)
        assert float(row["e_inf"]) == pytest.approx(report.e_inf, rel=1e-4)
        assert row["e2"] == f"{report.e2:.5e}"

    def test_checkpoint_reusable(self, tmp_path):
        cfg = tiny_config(tmp_path)
        report = run_experiment(cfg)
        params = load_checkpoint(tmp_path / "model.ckpt")
        spec = get_problem("ex1")
        again = evaluate(params, spec, PerturbationPair(cfg.eps1, cfg.eps2),
                         grid_n=cfg.grid_n)
        assert again.e2 == report.e2

    def test_fdm_on_2d_rejected(self, tmp_path):
        cfg = tiny_config(tmp_path, problem="ex4", method="fdm")
        with pytest.raises(UnsupportedOperationError):
            run_experiment(cfg)

    def test_fdm_artifacts(self, tmp_path):
        cfg = tiny_config(tmp_path, method="fdm", fdm_n=64)
        report = run_experiment(cfg)
        lines = (tmp_path / "errors.csv").read_text().strip().splitlines()
        assert lines[0] == "method,eps1,eps2,N,e_inf"
        assert report.e_inf > 0.0

    def test_unknown_method(self, tmp_path):
        cfg = tiny_config(tmp_path, method="galerkin")
        with pytest.raises(ConfigurationError):
            run_experiment(cfg)

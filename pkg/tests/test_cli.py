import csv

import pytest

from papinn.cli import main

TINY = ["--iters", "3"]


def tiny_cfg(tmp_path):
    path = tmp_path / "tiny.cfg"
    path.write_text(
        "problem = ex1\n"
        "eps1 = 1e-1\n"
        "eps2 = 1e-2\n"
        "schedule_steps = 0\n"
        "hidden_layers = 1\n"
        "hidden_width = 4\n"
        "n_interior = 16\n"
        "n_boundary = 2\n"
        "iters = 3\n"
        "refine_pool = 32\n"
        "refine_k = 4\n"
        "grid_n = 11\n"
    )
    return str(path)


def test_train_pinn(tmp_path, capsys):
    out = tmp_path / "run"
    main(["train", "--example", "ex1", "--eps1", "1e-1", "--eps2", "1e-2",
          "--method", "pinn", "--out", str(out), "--config", tiny_cfg(tmp_path)])
    captured = capsys.readouterr().out
    assert "E2=" in captured
    assert (out / "errors.csv").exists()


def test_train_pa_pinn(tmp_path):
    out = tmp_path / "run"
    main(["train", "--example", "ex1", "--eps1", "1e-1", "--eps2", "1e-2",
          "--method", "pa_pinn", "--out", str(out), "--config", tiny_cfg(tmp_path)])
    assert (out / "history.csv").exists()


def test_evaluate_checkpoint(tmp_path, capsys):
    out = tmp_path / "run"
    main(["train", "--example", "ex1", "--eps1", "1e-1", "--eps2", "1e-2",
          "--method", "pinn", "--out", str(out), "--config", tiny_cfg(tmp_path)])
    main(["evaluate", "--example", "ex1", "--eps1", "1e-1", "--eps2", "1e-2",
          "--checkpoint", str(out / "model.ckpt")])
    assert "grid=" in capsys.readouterr().out


def test_compare_includes_fdm_for_1d(tmp_path):
    out = tmp_path / "cmp"
    main(["compare", "--example", "ex1", "--eps1", "1e-1", "--eps2", "1e-2",
          "--out", str(out), "--config", tiny_cfg(tmp_path)])
    with open(out / "compare.csv") as fh:
        methods = [row["method"] for row in csv.DictReader(fh)]
    assert methods == ["pa_pinn", "pinn", "fdm"]


def test_table_fdm_sweep(tmp_path):
    out = tmp_path / "tab"
    main(["table", "--example", "ex1", "--method", "fdm", "--out", str(out),
          "--config", tiny_cfg(tmp_path)])
    with open(out / "table.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    assert all(row["method"] == "fdm" for row in rows)


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])

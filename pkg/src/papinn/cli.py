"""Command-line entry point.

Subcommands:
  train      run one method on one problem, write artifacts to --out
  evaluate   score a saved checkpoint against the exact solution
  compare    run pa_pinn, pinn (and fdm for 1D steady) at one pair
  table      sweep the standard parameter pairs for one method
"""

import argparse
import csv
import os
import sys
from dataclasses import replace

from .network import load_checkpoint
from .problems import PerturbationPair, get_problem
from .reporting import ExperimentConfig, evaluate, parse_config, run_experiment

_PAIR_SWEEP = [(1e-1, 1e-2), (1e-2, 1e-3), (1e-3, 1e-4), (1e-4, 1e-5)]


def _add_common(p):
    p.add_argument("--example", required=True, help="problem id, ex1..ex6")
    p.add_argument("--eps1", type=float, default=1e-2)
    p.add_argument("--eps2", type=float, default=1e-3)
    p.add_argument("--method", default="pa_pinn", choices=["pa_pinn", "pinn", "fdm"])
    p.add_argument("--schedule", default="linear", choices=["linear", "geometric"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=None,
                   help="optimizer iterations per solve (problem default if omitted)")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--config", default=None, help="key=value experiment config file")


def _config_from_args(args):
    if args.config:
        cfg = parse_config(args.config)
        return replace(cfg, problem=args.example, eps1=args.eps1, eps2=args.eps2,
                       method=args.method, schedule=args.schedule, seed=args.seed,
                       iters=args.iters if args.iters is not None else cfg.iters,
                       out_dir=args.out)
    return ExperimentConfig(problem=args.example, eps1=args.eps1, eps2=args.eps2,
                            method=args.method, schedule=args.schedule,
                            seed=args.seed, iters=args.iters, out_dir=args.out)


def cmd_train(args):
    report = run_experiment(_config_from_args(args))
    print(f"{args.method} {args.example} eps=({args.eps1:g},{args.eps2:g}) "
          f"E2={report.e2:.5e} Einf={report.e_inf:.5e}")


def cmd_evaluate(args):
    spec = get_problem(args.example)
    params = load_checkpoint(args.checkpoint)
    report = evaluate(params, spec, PerturbationPair(args.eps1, args.eps2))
    print(f"{args.example} eps=({args.eps1:g},{args.eps2:g}) "
          f"E2={report.e2:.5e} Einf={report.e_inf:.5e} grid={report.grid_size}")


def cmd_compare(args):
    spec = get_problem(args.example)
    methods = ["pa_pinn", "pinn"]
    if spec.input_dim == 1 and not spec.time_dependent:
        methods.append("fdm")
    rows = []
    for method in methods:
        cfg = _config_from_args(args)
        cfg = replace(cfg, method=method, out_dir=os.path.join(args.out, method))
        report = run_experiment(cfg)
        rows.append([method, args.example, f"{args.eps1:.5e}", f"{args.eps2:.5e}",
                     f"{report.e2:.5e}", f"{report.e_inf:.5e}"])
        print(f"{method:8s} E2={report.e2:.5e} Einf={report.e_inf:.5e}")
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "compare.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["method", "example", "eps1", "eps2", "e2", "e_inf"])
        w.writerows(rows)


def cmd_table(args):
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "table.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if args.method == "fdm":
            w.writerow(["method", "eps1", "eps2", "N", "e_inf"])
        else:
            w.writerow(["method", "example", "eps1", "eps2", "e2", "e_inf", "seed", "iters"])
        for eps1, eps2 in _PAIR_SWEEP:
            cfg = _config_from_args(args)
            cfg = replace(cfg, eps1=eps1, eps2=eps2,
                          out_dir=os.path.join(args.out, f"{eps1:g}_{eps2:g}"))
            report = run_experiment(cfg)
            if args.method == "fdm":
                w.writerow([args.method, f"{eps1:.5e}", f"{eps2:.5e}",
                            cfg.fdm_n, f"{report.e_inf:.5e}"])
            else:
                w.writerow([args.method, args.example, f"{eps1:.5e}", f"{eps2:.5e}",
                            f"{report.e2:.5e}", f"{report.e_inf:.5e}",
                            args.seed, cfg.iters or ""])
            print(f"{args.method} ({eps1:g},{eps2:g}) E2={report.e2:.5e}")
    print(f"wrote {path}")


def main(argv=None):
    parser = argparse.ArgumentParser(prog="papinn")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one method on one problem")
    _add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a saved checkpoint")
    _add_common(p)
    p.add_argument("--checkpoint", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="pa_pinn vs pinn (vs fdm) at one pair")
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("table", help="sweep the standard parameter pairs")
    _add_common(p)
    p.set_defaults(func=cmd_table)

    args = parser.parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Parameter-continuation physics-informed networks for two-parameter
singularly perturbed boundary-value problems, with exact-solution
oracles, a standard-PINN baseline and an upwind FDM baseline."""

from .continuation import (ContinuationConfig, Schedule, geometric_sequence,
                           linear_sequence, run_pa_pinn)
from .fdm import shishkin_mesh, upwind_solve
from .jets import Jet2, LossGrad, eval_jet, loss_gradient
from .network import (MlpParams, NetworkShape, forward, init_params,
                      load_checkpoint, save_checkpoint)
from .problems import (PerturbationPair, ProblemSpec, RegimeLabel,
                       characteristic_roots, classify_regime, exact_solution,
                       get_problem, residual)
from .reporting import ErrorReport, ExperimentConfig, evaluate, linf_err, rel_l2, run_experiment
from .sampling import TrainingSet, adaptive_refine, lhs_interior, sample_boundary
from .training import (LossWeights, OptimConfig, TrainReport, minimize,
                       relative_change, total_loss, train_standard_pinn)

__all__ = [
    "ContinuationConfig", "Schedule", "geometric_sequence", "linear_sequence",
    "run_pa_pinn", "shishkin_mesh", "upwind_solve", "Jet2", "LossGrad",
    "eval_jet", "loss_gradient", "MlpParams", "NetworkShape", "forward",
    "init_params", "load_checkpoint", "save_checkpoint", "PerturbationPair",
    "ProblemSpec", "RegimeLabel", "characteristic_roots", "classify_regime",
    "exact_solution", "get_problem", "residual", "ErrorReport",
    "ExperimentConfig", "evaluate", "linf_err", "rel_l2", "run_experiment",
    "TrainingSet", "adaptive_refine", "lhs_interior", "sample_boundary",
    "LossWeights", "OptimConfig", "TrainReport", "minimize",
    "relative_change", "total_loss", "train_standard_pinn",
]

__version__ = "0.1.0"

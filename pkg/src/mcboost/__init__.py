"""Multiclass boosting with binary weak learners.

Stage-wise boosters over coding matrices plus their totally corrective
column-generation counterparts, built on an exponential-loss restricted
master (with a hinge-loss LP variant) and an experiment harness for
repeated stratified resplits.
"""

from .coding import (CodingMatrix, ColumnStream, exhaustive_ecoc,
                     min_row_distance, one_vs_all, random_dense_code)
from .corrective import (DEFAULT_EPSILON, build_margin_column, cg_oracle,
                         multiboost)
from .data import (Dataset, SplitSpec, from_arrays, kfold_indices,
                   load_dataset, stratified_split)
from .ensemble import BoostTrace, DualTrace, Ensemble
from .errors import ConfigError, DataError, McBoostError, SolverError
from .evaluate import (MarginReport, correlation_trace, decode, min_margin,
                       multiclass_error, predict_labels, ranksum_test)
from .experiment import (BOOSTERS, THETA_GRID, ExperimentConfig, TrialReport,
                         default_coding, run_experiment, select_theta_cv,
                         select_theta_sum)
from .master import (MasterSolution, dual_objective, solve_master_exp)
from .rng import Rng, derive_seed
from .simplex import HingeSolution, solve_master_hinge
from .stagewise import adaboost_ecc, adaboost_mo
from .weak import (BinaryProblem, LdaHypothesis, Stump, train_lda,
                   train_stump, weighted_error)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

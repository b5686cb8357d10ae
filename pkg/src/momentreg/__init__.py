"""One-step distribution regression on polynomial moments of bags."""

from ._kernels import BACKEND
from .basis import BasisSpec, Family, basis_matrix, evaluate_basis
from .exceptions import (ConvergenceError, FormatError, IndefiniteMatrixError,
                         InputError, MomentRegError, SpanError)
from .linalg import EigenPair, SPDFactor, gen_eig_sym, spd_solve
from .moments import (Bag, BagDataset, MomentVector, Normalization, bag_moments,
                      dataset_moments, distribution_moments, point_state_moments)
from .regression import (Estimator, TrainedModel, fit, merge, predict_from_distribution,
                         predict_ls, predict_rn)
from .spectrum import (OutcomeDistribution, SpectralModel, outcome_distribution, project,
                       spectral_decompose)
from .synthetic import ExperimentConfig, Target, generate, target_function
from .io import load_dataset, load_model, save_dataset, save_model

__version__ = "0.1.0"

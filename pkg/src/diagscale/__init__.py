"""Diagonal scaling of sample covariance matrices.

Solver for diag(w) S diag(w) 1 = 1, high-dimensional theory curves for
the estimator's cosine similarity, exact solvability probabilities for
n < p, and a seeded Monte Carlo experiment harness.
"""

from .covmodel import (CovarianceSpec, Kind, Noise, build_covariance,
                       contrast_basis, haar_rotation, population_scaling,
                       sample_covariance, sample_data)
from .harness import (ExperimentConfig, Statistic, SummaryRow, Theory,
                      cosine_similarity, macroscopics, run_experiment,
                      summarize)
from .replica import (ReplicaPrediction, SaddleResiduals, cosine_identity,
                      g_prime, g_second, g_value, minimize_g,
                      replica_prediction, stationarity_residuals)
from .scaling import (ScalingSolution, SolverOptions, hamiltonian,
                      is_strictly_copositive, row_sum_residual, solve_scaling)
from .wendel import SolvabilityPoint, empirical_solvability, wendel_probability

__all__ = [
    "CovarianceSpec", "Kind", "Noise", "build_covariance", "contrast_basis",
    "haar_rotation", "population_scaling", "sample_covariance", "sample_data",
    "ExperimentConfig", "Statistic", "SummaryRow", "Theory",
    "cosine_similarity", "macroscopics", "run_experiment", "summarize",
    "ReplicaPrediction", "SaddleResiduals", "cosine_identity", "g_prime",
    "g_second", "g_value", "minimize_g", "replica_prediction",
    "stationarity_residuals",
    "ScalingSolution", "SolverOptions", "hamiltonian",
    "is_strictly_copositive", "row_sum_residual", "solve_scaling",
    "SolvabilityPoint", "empirical_solvability", "wendel_probability",
]

__version__ = "0.1.0"

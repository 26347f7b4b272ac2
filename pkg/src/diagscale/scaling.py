"""Diagonal scaling solver.

Finds the unique positive w with diag(w) S diag(w) 1 = 1 by minimizing
the strictly convex objective H(w) = -sum(log w_i) + w'Sw/2.  The
minimizer exists iff S is strictly copositive (w'Sw > 0 for every
nonzero nonnegative w); divergence of the iterates certifies
non-existence.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import DomainError, NotStrictlyCopositive, NumericalFailure


@dataclass(frozen=True)
class SolverOptions:
    tol: float = 1e-10          # on the row-sum residual max|w_i (Sw)_i - 1|
    max_iter: int = 200
    divergence_norm: float = 1e8

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")


@dataclass(frozen=True)
class ScalingSolution:
    w: np.ndarray
    residual: float
    iterations: int
    objective: float


def hamiltonian(w: np.ndarray, S: np.ndarray) -> float:
    """H(w) = -sum(log w_i) + w'Sw/2, defined on the positive orthant."""
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise DomainError("hamiltonian requires all w_i > 0")
    return float(-np.sum(np.log(w)) + 0.5 * (w @ (S @ w)))


def row_sum_residual(w: np.ndarray, S: np.ndarray) -> float:
    """max_i |w_i (Sw)_i - 1|: distance from all scaled row sums to one."""
    w = np.asarray(w, dtype=float)
    return float(np.max(np.abs(w * (S @ w) - 1.0)))


def solve_scaling(S: np.ndarray, opts: SolverOptions = SolverOptions(),
                  w_start: np.ndarray | None = None) -> ScalingSolution:
    """Solve diag(w) S diag(w) 1 = 1 for positive w.

    Damped Newton with backtracking on H; initialization w_i =
    1/sqrt(S_ii).  Raises NotStrictlyCopositive when the iterates
    diverge (no solution exists), NumericalFailure when the iteration
    cap is hit without a divergence certificate.
    """
    S = np.ascontiguousarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise DomainError("S must be a square matrix")
    if w_start is None:
        w0 = 1.0 / np.sqrt(np.maximum(np.diag(S), 1e-300))
    else:
        w0 = np.ascontiguousarray(w_start, dtype=float)
        if np.any(w0 <= 0):
            raise DomainError("starting point must be positive")
    w, res, it, obj, status = _kernels.newton_scaling(
        S, w0, opts.tol, opts.max_iter, opts.divergence_norm)
    if status == _kernels.CONVERGED:
        return ScalingSolution(w=w, residual=res, iterations=it, objective=obj)
    if status == _kernels.DIVERGED:
        raise NotStrictlyCopositive(
            f"iterates diverged after {it} iterations; no scaling solution")
    raise NumericalFailure(
        f"no convergence after {it} iterations (residual {res:.3e})")


def is_strictly_copositive(S: np.ndarray,
                           opts: SolverOptions = SolverOptions()) -> bool:
    """Marshall-Olkin certificate: the scaling solution exists iff S is
    strictly copositive.  Not a general copositivity oracle; raises
    NumericalFailure when the solver can neither converge nor diverge.
    """
    try:
        solve_scaling(S, opts)
    except NotStrictlyCopositive:
        return False
    return True

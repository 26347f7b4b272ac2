"""Solvability probability of the scaling problem for n < p.

For the identity covariance (any origin-symmetric noise) the scaling
problem is solvable exactly when the p data columns span a proper
convex cone in R^n, which happens with probability
sum_{i=0}^{n-1} C(p-1, i) / 2^(p-1).  For other models the probability
has no closed form and is estimated by simulation.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import covmodel, scaling
from .exceptions import NotStrictlyCopositive, NumericalFailure


def wendel_probability(n: int, p: int) -> float:
    """Exact solvability probability; 1 whenever n >= p.

    Computed in exact integer arithmetic (binomials can exceed float
    range for p ~ 10^3); the only rounding is the final conversion to
    float, below 1e-12 absolute.
    """
    if n < 1 or p < 1:
        raise ValueError("n and p must be >= 1")
    if n >= p:
        return 1.0
    total = sum(comb(p - 1, i) for i in range(n))
    return float(Fraction(total, 2 ** (p - 1)))


@dataclass(frozen=True)
class SolvabilityPoint:
    n: int
    p: int
    exact: float | None     # closed form, identity model only
    empirical: float
    reps: int               # replications entering the denominator
    failures: int           # indeterminate solver outcomes, excluded


def empirical_solvability(spec: covmodel.CovarianceSpec, n: int, p: int,
                          reps: int, seed=None,
                          opts: scaling.SolverOptions = scaling.SolverOptions()
                          ) -> SolvabilityPoint:
    """Fraction of replications whose sample covariance admits a scaling.

    Solver runs that hit the iteration cap without a divergence
    certificate are counted as failures and excluded from the
    denominator, so frequencies near the threshold stay unbiased.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    sigma = None
    if spec.kind in (covmodel.Kind.IDENTITY, covmodel.Kind.SPIKE):
        sigma = covmodel.build_covariance(spec, p)
    solved = 0
    failures = 0
    for rep in range(reps):
        ss = np.random.SeedSequence(seed, spawn_key=(rep,))
        if sigma is None:
            cov_seed, data_seed = ss.spawn(2)
            cov = covmodel.build_covariance(spec, p, cov_seed)
        else:
            data_seed = ss
            cov = sigma
        X = covmodel.sample_data(cov, n, spec.noise, data_seed)
        S = covmodel.sample_covariance(X)
        try:
            scaling.solve_scaling(S, opts)
            solved += 1
        except NotStrictlyCopositive:
            pass
        except NumericalFailure:
            failures += 1
    denom = reps - failures
    exact = None
    if spec.kind is covmodel.Kind.IDENTITY or (
            spec.kind is covmodel.Kind.SPIKE and spec.omega == 0):
        exact = wendel_probability(n, p)
    return SolvabilityPoint(n=n, p=p, exact=exact,
                            empirical=solved / max(denom, 1),
                            reps=denom, failures=failures)

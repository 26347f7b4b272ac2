"""Population covariance models and sampling.

Four models: identity, spike (rank-one lift of the identity along the
all-ones direction), power-law and stepwise spectra in a random rotated
basis orthogonal to the all-ones vector.  Samples are Gaussian or
standardized t with 3 degrees of freedom.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import InvalidDimension, InvalidOmega, NotPSD, Unsupported


class Kind(Enum):
    IDENTITY = "identity"
    SPIKE = "spike"
    POWERLAW = "powerlaw"
    STEPWISE = "stepwise"


class Noise(Enum):
    GAUSSIAN = "gaussian"
    STUDENT_T3 = "t3"


@dataclass(frozen=True)
class CovarianceSpec:
    kind: Kind
    omega: float = 0.0
    noise: Noise = Noise.GAUSSIAN

    def __post_init__(self):
        if self.kind is Kind.SPIKE and self.omega <= -1.0:
            raise InvalidOmega(f"spike model requires omega > -1, got {self.omega}")


def haar_rotation(d: int, rng) -> np.ndarray:
    """Haar-distributed orthogonal d x d matrix.

    QR of an i.i.d. Gaussian matrix, with the R diagonal sign correction
    that makes the distribution exactly Haar.
    """
    if d < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(rng)
    z = rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def contrast_basis(p: int) -> np.ndarray:
    """Helmert-style p x (p-1) matrix Q with Q'1 = 0 and Q'Q = I.

    Deterministic, so the rotated models are reproducible given a seed.
    """
    if p < 2:
        raise InvalidDimension(f"contrast basis needs p >= 2, got {p}")
    Q = np.zeros((p, p - 1))
    for j in range(1, p):
        c = 1.0 / np.sqrt(j * (j + 1.0))
        Q[:j, j - 1] = c
        Q[j, j - 1] = -j * c
    return Q


def _spectrum(kind: Kind, p: int) -> np.ndarray:
    if kind is Kind.POWERLAW:
        h = 1.0 / np.arange(1, p, dtype=float)
    else:
        if p % 2 != 0:
            raise InvalidDimension(f"stepwise model needs even p, got {p}")
        h = np.concatenate([np.ones(p // 2), np.full(p // 2 - 1, 0.5)])
    # trace(Sigma) = p means 1 + sum(h) = p after rescaling
    return h * (p - 1.0) / h.sum()


def build_covariance(spec: CovarianceSpec, p: int, seed=None) -> np.ndarray:
    """Population covariance matrix for the given model.

    Power-law and stepwise draw a fresh Haar rotation from ``seed`` each
    call; identity and spike are deterministic.
    """
    if p < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {p}")
    if spec.kind is Kind.IDENTITY:
        return np.eye(p)
    if spec.kind is Kind.SPIKE:
        if spec.omega <= -1.0:
            raise InvalidOmega(f"spike model requires omega > -1, got {spec.omega}")
        return np.eye(p) + spec.omega / p * np.ones((p, p))
    h = _spectrum(spec.kind, p)
    Q = contrast_basis(p)
    U = haar_rotation(p - 1, seed)
    sigma = np.ones((p, p)) / p + Q @ (U * h) @ U.T @ Q.T
    return 0.5 * (sigma + sigma.T)


def population_scaling(spec: CovarianceSpec, p: int) -> np.ndarray:
    """Population weight vector w0 with W0 Sigma W0 1 = 1.

    Closed form exists only for identity and spike; for the rotated
    models w0 depends on the realized rotation, so solve the scaling
    problem on the realized Sigma instead.
    """
    if spec.kind is Kind.IDENTITY:
        return np.ones(p)
    if spec.kind is Kind.SPIKE:
        return np.full(p, 1.0 / np.sqrt(spec.omega + 1.0))
    raise Unsupported(f"{spec.kind.value}: w0 depends on the realized rotation")


def sample_data(cov: np.ndarray, n: int, noise: Noise, seed=None) -> np.ndarray:
    """n i.i.d. rows with covariance ``cov`` and the requested noise family.

    Rows are L z with L L' = cov (symmetric eigendecomposition square
    root, robust near singular cov); z has unit-variance i.i.d. entries:
    standard normal, or t_3 / sqrt(3).
    """
    if n < 1:
        raise InvalidDimension(f"need n >= 1 samples, got {n}")
    p = cov.shape[0]
    evals, evecs = np.linalg.eigh(cov)
    if evals.min() < -1e-8 * max(1.0, evals.max()):
        raise NotPSD(f"covariance has eigenvalue {evals.min():.3e} < 0")
    root = evecs * np.sqrt(np.clip(evals, 0.0, None))
    rng = np.random.default_rng(seed)
    if noise is Noise.STUDENT_T3:
        z = rng.standard_t(3, size=(n, p)) / np.sqrt(3.0)
    else:
        z = rng.standard_normal((n, p))
    return z @ root.T


def sample_covariance(X: np.ndarray) -> np.ndarray:
    """Uncentered sample covariance S = X'X / n."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1:
        raise InvalidDimension("data matrix must be 2-D with n >= 1 rows")
    if not np.all(np.isfinite(X)):
        raise NotPSD("data matrix contains non-finite entries")
    n = X.shape[0]
    S = X.T @ X / n
    return 0.5 * (S + S.T)

"""High-dimensional theory curves for the scaling estimator.

In the limit p -> infinity with n/p -> alpha >= 1 under the spike
covariance model Sigma = omega 11'/p + I, the cosine similarity between
the estimated and population weight vectors converges to mu/sqrt(nu),
where mu minimizes a strictly convex scalar function and nu, eta, w2
follow in closed form.  omega = 0 has fully explicit formulas.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .exceptions import DomainError


def cosine_identity(alpha: float) -> float:
    """Limiting cosine similarity for the identity covariance.

    (1 - 3/(8 alpha)) / sqrt(1 - 1/(2 alpha)); equals 5 sqrt(2)/8 at
    alpha = 1 and increases to 1 as alpha -> infinity.
    """
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    return (1.0 - 3.0 / (8.0 * alpha)) / np.sqrt(1.0 - 1.0 / (2.0 * alpha))


def _check_domain(mu, omega, alpha):
    if mu <= 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")


def g_value(mu: float, omega: float, alpha: float) -> float:
    """Scalar objective whose minimizer determines the omega > 0 curve."""
    _check_domain(mu, omega, alpha)
    t = omega * mu
    return (mu / 2.0
            + (omega + 1.0) / (2.0 * omega * (t + 1.0))
            + 0.5 * np.log((t + 2.0) / ((t + 1.0) * (t + 2.0 - 1.0 / alpha))))


def g_prime(mu: float, omega: float, alpha: float) -> float:
    # factored so the O(omega) derivative is computed without the
    # catastrophic cancellation the raw term-by-term form suffers when
    # omega is tiny: 1/2 - (omega+1)/(2(t+1)^2) = omega (omega mu^2 +
    # 2 mu - 1)/(2(t+1)^2) and 1/(t+2) - 1/(t+1) = -1/((t+1)(t+2))
    _check_domain(mu, omega, alpha)
    t = omega * mu
    return omega * ((omega * mu * mu + 2.0 * mu - 1.0) / (2.0 * (t + 1.0) ** 2)
                    - 1.0 / (2.0 * (t + 1.0) * (t + 2.0))
                    - 1.0 / (2.0 * (t + 2.0 - 1.0 / alpha)))


def g_second(mu: float, omega: float, alpha: float) -> float:
    _check_domain(mu, omega, alpha)
    t = omega * mu
    return (omega * (omega + 1.0) / (t + 1.0) ** 3
            + 0.5 * omega ** 2 * (-1.0 / (t + 2.0) ** 2
                                  + 1.0 / (t + 1.0) ** 2
                                  + 1.0 / (t + 2.0 - 1.0 / alpha) ** 2))


def minimize_g(omega: float, alpha: float) -> float:
    """Unique minimizer of g over mu > 0.

    g'(0+) < 0 and g' is increasing (g strictly convex), so bracket the
    root of g' by doubling, solve with Brent, then polish with Newton
    steps until |g'| <= 1e-12 * max(1, g'' * mu).
    """
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    lo = 1e-12
    hi = 1.0
    while g_prime(hi, omega, alpha) <= 0.0:
        hi *= 2.0
        if hi > 1e16:
            raise DomainError("failed to bracket the minimizer of g")
    mu = brentq(g_prime, lo, hi, args=(omega, alpha), xtol=1e-15, rtol=1e-15)
    for _ in range(10):
        gp = g_prime(mu, omega, alpha)
        gpp = g_second(mu, omega, alpha)
        if abs(gp) <= 1e-12 * max(1.0, gpp * mu):
            break
        step = gp / gpp
        if mu - step <= 0:
            break
        mu -= step
    return mu


@dataclass(frozen=True)
class ReplicaPrediction:
    omega: float
    alpha: float
    mu: float
    nu: float
    eta: float
    w2: float
    Q: float
    m: float
    chi: float
    cosine: float


def replica_prediction(omega: float, alpha: float) -> ReplicaPrediction:
    """Saddle-point tuple (mu, nu, eta, w2) and derived macroscopics.

    omega = 0 uses the closed forms; omega > 0 minimizes g and maps mu
    to the remaining variables.  The curve is not extrapolated to
    omega < 0 or alpha < 1.
    """
    if omega < 0:
        raise DomainError(f"prediction not available for omega < 0, got {omega}")
    if alpha < 1:
        raise DomainError(f"prediction not available for alpha < 1, got {alpha}")
    if omega == 0:
        eta = 0.5
        w2 = 1.0 / (1.0 - 1.0 / (2.0 * alpha))
        nu = w2
        mu = (1.0 - 3.0 / (8.0 * alpha)) / (1.0 - 1.0 / (2.0 * alpha))
    else:
        mu = minimize_g(omega, alpha)
        t = omega * mu
        eta = (t + 1.0) / (t + 2.0)
        w2 = (t + 2.0) / ((t + 1.0) * (t + 2.0 - 1.0 / alpha))
        nu = -omega * mu ** 2 + (t + 1.0) * (t + 2.0) / (t + 2.0 - 1.0 / alpha)
    w = np.sqrt(w2)
    return ReplicaPrediction(
        omega=omega, alpha=alpha, mu=mu, nu=nu, eta=eta, w2=w2,
        Q=w2 * nu, m=w * mu, chi=w2 * eta, cosine=mu / np.sqrt(nu))


@dataclass(frozen=True)
class SaddleResiduals:
    r_nu: float
    r_mu: float
    r_eta: float
    r_w2: float

    def max_abs(self) -> float:
        return max(abs(self.r_nu), abs(self.r_mu), abs(self.r_eta), abs(self.r_w2))


def stationarity_residuals(pred: ReplicaPrediction) -> SaddleResiduals:
    """Values of the four stationarity conditions in (nu, mu, eta, w2).

    All four vanish (to rounding) at a valid prediction; they move away
    from zero under perturbation because the underlying objective is
    strictly convex in mu.
    """
    omega, alpha = pred.omega, pred.alpha
    mu, nu, eta, w2 = pred.mu, pred.nu, pred.eta, pred.w2
    D = 1.0 + w2 * eta / alpha
    r_nu = -w2 / (2.0 * D) + 1.0 / (2.0 * eta) - 0.5
    r_mu = -w2 * omega * mu / D - 1.0 / eta + 2.0
    r_eta = (w2 ** 2 * (omega * mu ** 2 + nu) / (2.0 * alpha * D ** 2)
             - (nu / 2.0 - mu + 0.5) / eta ** 2)
    r_w2 = -(omega * mu ** 2 + nu) / (2.0 * D ** 2) + 1.0 / (2.0 * w2)
    return SaddleResiduals(r_nu=r_nu, r_mu=r_mu, r_eta=r_eta, r_w2=r_w2)

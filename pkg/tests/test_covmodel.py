import numpy as np
import pytest

from diagscale import covmodel
from diagscale.covmodel import CovarianceSpec, Kind, Noise
from diagscale.exceptions import InvalidDimension, InvalidOmega, Unsupported


def test_identity_matrix():
    spec = CovarianceSpec(Kind.IDENTITY)
    assert np.array_equal(covmodel.build_covariance(spec, 3), np.eye(3))


def test_spike_small_case():
    spec = CovarianceSpec(Kind.SPIKE, omega=1.0)
    sigma = covmodel.build_covariance(spec, 2)
    np.testing.assert_allclose(sigma, [[1.5, 0.5], [0.5, 1.5]])


def test_spike_rejects_omega_at_minus_one():
    with pytest.raises(InvalidOmega):
        CovarianceSpec(Kind.SPIKE, omega=-1.0)


def test_dimension_too_small():
    with pytest.raises(InvalidDimension):
        covmodel.build_covariance(CovarianceSpec(Kind.IDENTITY), 1)


def test_stepwise_rejects_odd_p():
    with pytest.raises(InvalidDimension):
        covmodel.build_covariance(CovarianceSpec(Kind.STEPWISE), 99, seed=0)


@pytest.mark.parametrize("kind", [Kind.POWERLAW, Kind.STEPWISE])
@pytest.mark.parametrize("p", [4, 10, 100])
def test_rotated_models_invariants(kind, p):
    sigma = covmodel.build_covariance(CovarianceSpec(kind), p, seed=7)
    assert np.allclose(sigma, sigma.T, rtol=1e-12)
    assert abs(np.trace(sigma) - p) < 1e-8 * p
    # the all-ones direction always carries eigenvalue 1
    assert np.max(np.abs(sigma @ np.ones(p) - 1.0)) < 1e-10


def test_powerlaw_ones_eigenvector():
    sigma = covmodel.build_covariance(CovarianceSpec(Kind.POWERLAW), 4, seed=3)
    assert abs(np.trace(sigma) - 4.0) < 1e-8
    v = np.ones(4) / 2.0
    np.testing.assert_allclose(sigma @ v, v, atol=1e-10)


@pytest.mark.parametrize("omega", [-0.99, -0.5, 0.0, 1.0, 100.0])
def test_spike_positive_definite(omega):
    sigma = covmodel.build_covariance(CovarianceSpec(Kind.SPIKE, omega), 20)
    lam = np.linalg.eigvalsh(sigma).min()
    assert lam >= min(1.0, 1.0 + omega) - 1e-8


def test_population_scaling_identity():
    w0 = covmodel.population_scaling(CovarianceSpec(Kind.IDENTITY), 5)
    assert np.array_equal(w0, np.ones(5))


def test_population_scaling_spike():
    w0 = covmodel.population_scaling(CovarianceSpec(Kind.SPIKE, 3.0), 2)
    np.testing.assert_allclose(w0, [0.5, 0.5])
    w0 = covmodel.population_scaling(CovarianceSpec(Kind.SPIKE, 0.0), 4)
    np.testing.assert_allclose(w0, np.ones(4))


@pytest.mark.parametrize("omega", [-0.9, 0.5, 10.0])
def test_population_scaling_solves_exactly(omega):
    p = 6
    spec = CovarianceSpec(Kind.SPIKE, omega)
    sigma = covmodel.build_covariance(spec, p)
    w0 = covmodel.population_scaling(spec, p)
    np.testing.assert_allclose(w0 * (sigma @ w0), np.ones(p), atol=1e-12)


def test_population_scaling_unsupported_for_rotated():
    with pytest.raises(Unsupported):
        covmodel.population_scaling(CovarianceSpec(Kind.POWERLAW), 10)


def test_sample_covariance_examples():
    np.testing.assert_allclose(
        covmodel.sample_covariance([[1.0, 0.0], [0.0, 1.0]]),
        [[0.5, 0.0], [0.0, 0.5]])
    np.testing.assert_allclose(covmodel.sample_covariance([[2.0]]), [[4.0]])
    np.testing.assert_allclose(
        covmodel.sample_covariance([[1.0, 1.0], [1.0, -1.0]]), np.eye(2))


def test_sample_covariance_psd():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((5, 12))
    S = covmodel.sample_covariance(X)
    lam = np.linalg.eigvalsh(S)
    assert lam.min() >= -1e-10 * np.abs(S).max()


def test_haar_d1():
    for seed in range(5):
        U = covmodel.haar_rotation(1, seed)
        assert U.shape == (1, 1)
        assert abs(abs(U[0, 0]) - 1.0) < 1e-14


def test_haar_orthogonal():
    U = covmodel.haar_rotation(5, 11)
    assert np.max(np.abs(U.T @ U - np.eye(5))) < 1e-10


def test_haar_mean_entry():
    rng = np.random.default_rng(42)
    vals = [covmodel.haar_rotation(3, rng)[0, 0] for _ in range(10_000)]
    assert abs(np.mean(vals)) < 0.03


@pytest.mark.parametrize("p", [2, 3, 100])
def test_contrast_basis(p):
    Q = covmodel.contrast_basis(p)
    assert Q.shape == (p, p - 1)
    assert np.max(np.abs(Q.T @ np.ones(p))) < 1e-12
    assert np.max(np.abs(Q.T @ Q - np.eye(p - 1))) < 1e-12


def test_contrast_basis_p2_direction():
    Q = covmodel.contrast_basis(2)
    expected = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert (np.allclose(Q[:, 0], expected, atol=1e-14)
            or np.allclose(Q[:, 0], -expected, atol=1e-14))


def test_gaussian_sampling_covariance():
    X = covmodel.sample_data(np.eye(2), 100_000, Noise.GAUSSIAN, seed=1)
    S = covmodel.sample_covariance(X)
    assert np.max(np.abs(S - np.eye(2))) < 0.02


def test_gaussian_sampling_variance_scale():
    X = covmodel.sample_data(np.array([[4.0]]), 100_000, Noise.GAUSSIAN, seed=2)
    assert abs(X.var() - 4.0) < 0.1


def test_t3_sampling_unit_variance():
    X = covmodel.sample_data(np.eye(1), 100_000, Noise.STUDENT_T3, seed=3)
    assert abs(X.var() - 1.0) < 0.05


def test_empirical_covariance_three_sigma():
    # entrywise 3-sigma check against the population covariance
    spec = CovarianceSpec(Kind.SPIKE, 2.0)
    sigma = covmodel.build_covariance(spec, 3)
    n = 100_000
    X = covmodel.sample_data(sigma, n, Noise.GAUSSIAN, seed=4)
    S = covmodel.sample_covariance(X)
    # var of S_ij estimate is (sigma_ii sigma_jj + sigma_ij^2)/n
    se = np.sqrt((np.outer(np.diag(sigma), np.diag(sigma)) + sigma ** 2) / n)
    assert np.all(np.abs(S - sigma) < 3.0 * se)


def test_sampling_deterministic_given_seed():
    X1 = covmodel.sample_data(np.eye(4), 10, Noise.GAUSSIAN, seed=9)
    X2 = covmodel.sample_data(np.eye(4), 10, Noise.GAUSSIAN, seed=9)
    assert np.array_equal(X1, X2)

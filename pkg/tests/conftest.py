import numpy as np
import pytest

from diagscale import scaling


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    # pay the one-off numba compilation before any timed test runs
    scaling.solve_scaling(np.eye(2))


def random_spd(p, rng, lo=0.2, hi=5.0):
    """Random SPD matrix with eigenvalues uniform in [lo, hi]."""
    from diagscale.covmodel import haar_rotation
    U = haar_rotation(p, rng)
    evals = rng.uniform(lo, hi, size=p)
    return (U * evals) @ U.T

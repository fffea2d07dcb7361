import numpy as np
import pytest

from carakit.model import DiskGrid


@pytest.fixture(scope="session")
def grid():
    return DiskGrid.default()


@pytest.fixture(scope="session")
def coarse_grid():
    return DiskGrid.geometric(J=16, M=32, r_max=1 - 2.0**-8)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

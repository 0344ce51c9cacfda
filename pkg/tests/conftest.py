import numpy as np
import pytest

from wellbounded.catalog import standard_catalog


@pytest.fixture(scope="session")
def catalog():
    return standard_catalog()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

import logging

import numpy as np
import pytest

from datasets.fixtures import get_fixture
from model.liegroup import screw_exp


@pytest.fixture
def rng():
    return np.random.default_rng(20210415)


@pytest.fixture
def puma_nominal():
    return get_fixture('puma560_nominal')


@pytest.fixture
def puma_actual():
    return get_fixture('puma560_actual')


@pytest.fixture
def random_twist(rng):
    """twist with a rotation part of norm below 2.5 rad and a translation part in [-5, 5] mm"""
    def sample():
        w = rng.normal(size=3)
        w *= rng.uniform(0.2, 2.5) / np.linalg.norm(w)
        return np.concatenate([w, rng.uniform(-5., 5., 3)])
    return sample


@pytest.fixture
def random_transform(random_twist):
    return lambda: screw_exp(random_twist())


@pytest.fixture
def random_unit(rng):
    def sample():
        u = rng.normal(size=3)
        return u / np.linalg.norm(u)
    return sample


@pytest.fixture(autouse=True)
def fresh_screwdh_logger():
    # the console handler binds sys.stdout when created, which pytest swaps per test
    yield
    logger = logging.getLogger('screwdh')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

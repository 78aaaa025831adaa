import numpy as np
import pytest

from unsharpseq.protocol import ProtocolConfig
from unsharpseq.tables import exact_rows
from unsharpseq.tests import DEFAULT_SCHEDULE


@pytest.fixture
def default_config():
    """ The three-step experiment: mu = 0.34, 0.19, 0 """
    return ProtocolConfig(DEFAULT_SCHEDULE)


@pytest.fixture
def golden_rows(default_config):
    return exact_rows(default_config)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

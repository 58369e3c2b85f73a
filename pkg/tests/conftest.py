import numpy as np
import pytest

from rackdend.structures import group_fixture, rack_fixture


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def R3():
    return rack_fixture("R3")


@pytest.fixture(scope="session")
def ConjS3():
    return rack_fixture("ConjS3")


@pytest.fixture(scope="session")
def S3():
    return group_fixture("S3")

import random

import pytest

from carlitz import FieldParams


@pytest.fixture
def F2():
    return FieldParams.default(2)


@pytest.fixture
def F3():
    return FieldParams.default(3)


@pytest.fixture
def F4():
    return FieldParams.default(4)


@pytest.fixture
def rng():
    return random.Random(20260809)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: spec acceptance criteria")

import numpy as np
import pytest

from fidbounds import sampling

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def full_rank_states():
    return [sampling.random_density_matrix(11, 4, i) for i in range(100)]


@pytest.fixture(scope="session")
def rank3_states():
    return [sampling.random_density_matrix(12, 3, i) for i in range(100)]

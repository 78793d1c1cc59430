import numpy as np
import pytest

from oversmooth.model import build_model_problem


@pytest.fixture(scope="session")
def problem():
    return build_model_problem()


@pytest.fixture(scope="session")
def small_problem():
    return build_model_problem(50)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

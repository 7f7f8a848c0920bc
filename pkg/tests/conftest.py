import itertools

import numpy as np
import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def cube_points():
    return np.array(list(itertools.product([1.0, -1.0], repeat=3)))


@pytest.fixture
def square_points():
    return np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_sphere_points(rng, n, d):
    X = rng.normal(size=(n, d))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from lambdavar import GridFunction


@pytest.fixture
def xy_half():
    """``f(x, y) = x y`` on the grid ``{0, 1/2, 1}^2``."""
    ax = np.array([0.0, 0.5, 1.0])
    return GridFunction((ax, ax), np.outer(ax, ax))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

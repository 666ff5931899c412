import cmath
import math

import numpy as np
import pytest

# z-grid used by several invariants: four directions, |z| = 40 * 4**r
DIRECTIONS = (-1.0, -cmath.exp(1j * math.pi / 6), -cmath.exp(1j * math.pi / 3), 1j)


def z_grid(rmax=5):
    return [d * 40.0 * 4**r for r in range(rmax + 1) for d in DIRECTIONS]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

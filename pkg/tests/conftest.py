import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def gaussian_pair(rng, N1, N2, p):
    return rng.standard_normal((N1, p)), rng.standard_normal((N2, p))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

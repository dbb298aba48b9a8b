import numpy as np
import pytest

from entmix.states import make_rng

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return make_rng(20031022)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_hermitian(gen, n, size):
    g = gen.standard_normal((size, n, n)) + 1j * gen.standard_normal((size, n, n))
    return g + np.conj(np.swapaxes(g, -1, -2))

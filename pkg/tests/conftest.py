import numpy as np
import pytest


def random_sym(rng, m, scale=1.0):
    a = rng.uniform(-1, 1, (m, m))
    return scale * (a + a.T) / 2


def valid_alphas(m):
    """A spread of Gindikin-admissible shapes for dimension m."""
    out = {0.5, 1.0, 1.5, (m - 1) / 2, float(m), (m - 1) / 2 + 0.37}
    return sorted(a for a in out if a > 0 and (a >= (m - 1) / 2 or (2 * a).is_integer()))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

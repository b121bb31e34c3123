import numpy as np
import pytest

from riesz_lab.geometry import NAMED_SETS

ALL_SETS = ["interval", "circle", "sphere2", "disk", "ball3", "torus"]

# lines reported by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(params=ALL_SETS)
def any_set(request):
    return NAMED_SETS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

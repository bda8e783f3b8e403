import sys
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# Omega0 of the four worked examples
EXAMPLE_OMEGA = {
    1: np.array([[1, 0.2, 0.1, 0.03], [0.2, -0.3, 0, 0], [0.1, 0, -0.1, 0], [0.03, 0, 0, -0.5]]),
    2: np.array([[1, 0.2, 0.25, 0], [0.2, -0.3, 0, 0], [0.25, 0, -0.15, 0], [0, 0, 0, -0.04]]),
    3: np.array([[0.596, 0, 0.148, 0], [0, -0.264, 0, 0], [0.148, 0, -0.183, 0], [0, 0, 0, -0.078]]),
    4: np.array([[2, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]]) / 36.0,
}

BELL_PHI_PLUS = np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)

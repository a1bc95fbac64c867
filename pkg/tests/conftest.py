from pathlib import Path

import numpy as np
import pytest

# the 4x4 worked example, times 12
U12 = np.array(
    [
        [8, 4 + 8j, 0, 0],
        [2 + 1j, -2j, 3 - 9j, -3 - 6j],
        [1 - 7j, -6 + 2j, 6, -3 + 3j],
        [3 + 4j, 2 - 4j, 3 - 3j, 9j],
    ]
)
U_EXAMPLE = U12 / 12
EXAMPLE_FILE = Path(__file__).resolve().parents[1] / "src" / "spdecomp" / "data" / "example_4x4.json"

ACCEPTANCE_LINES = []


@pytest.fixture
def u_example():
    return U_EXAMPLE.copy()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

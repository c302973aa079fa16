import os
import sys

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

MIXED3 = [[0, 8, 1], [3, 0, 2], [4, 1, 1]]
RAMP3 = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
SR3 = [[1, 2, 2], [0.5, 1, 2], [0.5, 0.5, 1]]

_CRITERIA = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record one acceptance line; it is printed in the terminal summary."""

    def record(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  {detail}".rstrip())

import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from bahnlab.core import BahncardConfig

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "150")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def small():
    """C=10, beta=1/2, T=5, so gamma=20."""
    return BahncardConfig(10, Fraction(1, 2), 5)


@pytest.fixture
def standard():
    """C=100, beta=4/5, T=10, so gamma=500."""
    return BahncardConfig(100, Fraction(4, 5), 10)


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """``criterion(n, ok, detail)`` records one acceptance line and asserts it."""

    def record(number, ok, detail):
        request.config.stash[ACCEPTANCE].append((number, ok, detail))
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(config.stash.get(ACCEPTANCE, []), key=lambda item: item[0])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in lines:
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")

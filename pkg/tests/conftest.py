from __future__ import annotations

import pytest

from imsets.enumeration import brute_force_fiber
from imsets.resources import counterexample


@pytest.fixture(scope="session")
def fiber33():
    return brute_force_fiber(3, 3)


@pytest.fixture(scope="session")
def fiber24():
    return brute_force_fiber(2, 4)


@pytest.fixture(scope="session")
def fiber34():
    return brute_force_fiber(3, 4)


@pytest.fixture
def indec33():
    return counterexample()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

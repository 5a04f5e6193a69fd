"""Shared fixtures and the acceptance summary printed after the run."""
from __future__ import annotations

import pytest

from secondform.surfaces import catalog

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def sphere():
    return catalog("sphere", r=1.0)


@pytest.fixture(scope="session")
def catenoid():
    return catalog("catenoid", c=1.0)


@pytest.fixture(scope="session")
def torus():
    return catalog("torus", R=2.0, a=1.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

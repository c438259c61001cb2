from __future__ import annotations

import pytest

from c3z3.pipeline import compute
from c3z3.relations.routes import route_a, route_b
from c3z3.solver import solve_through
from c3z3.store import HodgeStore

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def store15():
    return compute(15)


@pytest.fixture(scope="session")
def store27():
    # level 8 and N = 27 cover every relation through x-order 24
    return compute(27)


def _solved(kmax, source):
    store = HodgeStore()
    store.seed_three_point()
    solve_through(store, kmax, source)
    return store


@pytest.fixture(scope="session")
def route_a_store():
    return _solved(4, route_a)


@pytest.fixture(scope="session")
def route_b_store():
    return _solved(4, route_b)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])

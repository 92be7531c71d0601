import functools

import pytest

from coxperc.ball import build_ball
from coxperc.fixtures import fixture_names, load_fixture

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: l[7:9]):
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def cached_ball(name: str, radius: int):
    return build_ball(load_fixture(name), radius)


@pytest.fixture(scope="session")
def dodecahedron():
    return load_fixture("dodecahedron")


@pytest.fixture(scope="session")
def dodeca_ball4():
    return cached_ball("dodecahedron", 4)


@pytest.fixture(scope="session")
def dodeca_ball6():
    return cached_ball("dodecahedron", 6)


POLYHEDRAL = fixture_names()
# radius that keeps each fixture's ball small but with a non-trivial interior
SMALL_RADIUS = {"truncated_icosahedron": 3}


def small_ball(name: str):
    return cached_ball(name, SMALL_RADIUS.get(name, 4))

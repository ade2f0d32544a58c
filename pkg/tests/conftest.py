from pathlib import Path

import pytest

from toricpoly import parse

DATA = Path(__file__).parent / "data"

# Valid corpus polytopes (simple away from vertices).
CORPUS = [
    "square",
    "cube",
    "simplex",
    "octahedron",
    "pyramid",
    "teardrop2",
    "teardrop3",
    "teardrop5",
    "wp112",
    "labeled_square",
]

ACCEPTANCE_LINES: list[str] = []


def load(name):
    return parse((DATA / f"{name}.poly").read_text()).polytope()


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in CORPUS}


@pytest.fixture
def octahedron():
    return load("octahedron")


@pytest.fixture
def cube():
    return load("cube")


@pytest.fixture
def square():
    return load("square")


@pytest.fixture
def simplex():
    return load("simplex")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

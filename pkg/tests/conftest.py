import os

import pytest

from yshuffle.quiver import Quiver

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data_path(name: str) -> str:
    return os.path.abspath(os.path.join(DATA, f"{name}.json"))


def load(name: str) -> Quiver:
    return Quiver.load(data_path(name))


@pytest.fixture(scope="session")
def a1():
    return load("a1")


@pytest.fixture(scope="session")
def a2():
    return load("a2")


@pytest.fixture(scope="session")
def a2aff():
    return load("a2aff")


@pytest.fixture(scope="session")
def a1aff():
    return load("a1aff")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

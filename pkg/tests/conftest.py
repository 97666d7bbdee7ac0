from pathlib import Path

import pytest

from parcont.parser import parse_family, parse_polynomial
from parcont.poly import VariableContext

FAMILIES = Path(__file__).resolve().parent.parent / "families"


def load(name):
    return parse_family((FAMILIES / name).read_text())


def P(ctx, text):
    return parse_polynomial(text, ctx)


@pytest.fixture(scope="session")
def ex1():
    return load("example1.fam")


@pytest.fixture(scope="session")
def ex2():
    return load("example2.fam")


@pytest.fixture(scope="session")
def linear():
    return load("linear2.fam")


@pytest.fixture(scope="session")
def ex1_sat(ex1):
    from parcont.ideals import saturate_family

    return saturate_family(ex1)


@pytest.fixture(scope="session")
def ex2_sat(ex2):
    from parcont.ideals import saturate_family

    return saturate_family(ex2)


@pytest.fixture
def ctx_x():
    return VariableContext(("x",))


@pytest.fixture
def ctx_xy():
    return VariableContext(("x", "y"))


# one line per acceptance criterion, filled in by test_acceptance and echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

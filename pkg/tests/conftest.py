from functools import lru_cache
from pathlib import Path

import pytest

from nonselective.exact import IntPolynomial
from nonselective.numberfield import NumberField

DATA = Path(__file__).resolve().parents[1] / "src" / "nonselective" / "data"

EX1 = [6, 13, 0, -8, -1, 1]
EX2 = [-1, 8, 2, -9, -2, 1]


@lru_cache(maxsize=None)
def field(*coeffs):
    return NumberField(IntPolynomial(list(coeffs)))


def quad(n):
    """Q(sqrt n) on the polynomial x^2 - n."""
    return field(-n, 0, 1)


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def ex1():
    return field(*EX1)


@pytest.fixture(scope="session")
def ex2():
    return field(*EX2)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

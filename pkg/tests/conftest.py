import sys
from fractions import Fraction

import pytest

from syzkit.tensor3 import TripleTensor, catalecticant


def _unit(k: int, n: int = 5) -> list[int]:
    return [1 if i == k else 0 for i in range(n)]


ZERO = [0, 0, 0, 0, 0]


@pytest.fixture
def rnc3():
    """catalecticant(3, 2): [[c1,c2],[c2,c3],[c3,c4]], the twisted cubic."""
    return catalecticant(3, 2)


@pytest.fixture
def cat23():
    return catalecticant(2, 3)


@pytest.fixture
def zero_corner():
    """gamma_C = [[0, c1], [c2, c3], [c4, c5]]."""
    return TripleTensor.from_nested(
        [
            [ZERO, _unit(0)],
            [_unit(1), _unit(2)],
            [_unit(3), _unit(4)],
        ]
    )


def F(*xs):
    return tuple(Fraction(x) for x in xs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])

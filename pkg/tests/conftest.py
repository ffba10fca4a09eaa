from fractions import Fraction as F

import pytest

from visipoly import PolygonWithHoles


def unit_square():
    return PolygonWithHoles.from_rings([(0, 0), (1, 0), (1, 1), (0, 1)])


def l_polygon():
    return PolygonWithHoles.from_rings([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


def square_with_hole():
    return PolygonWithHoles.from_rings(
        [(0, 0), (6, 0), (6, 6), (0, 6)], [[(2, 2), (2, 4), (4, 4), (4, 2)]]
    )


def antenna_instance():
    """Two triangular holes whose apexes sit on the +x ray from the origin."""
    return PolygonWithHoles.from_rings(
        [(-1, -4), (6, -4), (6, 4), (-1, 4)],
        [
            [(2, 0), (1, 3), (F(3, 2), 3)],
            [(3, 0), (F(5, 2), -3), (2, -3)],
        ],
    )


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def lpoly():
    return l_polygon()


@pytest.fixture
def holed():
    return square_with_hole()


@pytest.fixture
def antenna():
    return antenna_instance()


_CRITERIA = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_CRITERIA] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line; they are repeated in the terminal summary."""
    lines = request.config.stash[_CRITERIA]

    def emit(num, ok, detail):
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} | {detail}"
        lines.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from visipoly.exact import (
    Ordering,
    Orientation,
    angle_cmp,
    angular_less,
    compare_along_ray,
    orient,
    orientation,
    to_exact,
)


def test_orientation_cases():
    assert orientation((0, 0), (1, 0), (0, 1)) is Orientation.LEFT_TURN
    assert orientation((0, 0), (1, 1), (2, 2)) is Orientation.COLLINEAR
    assert orientation((0, 0), (0, 1), (1, 1)) is Orientation.RIGHT_TURN


def test_orientation_with_huge_rationals():
    # slightly off a line through two far points: floats would call this collinear
    big = 10**30
    a, b = (0, 0), (big, big + 1)
    c = (F(big, 3), F(big + 1, 3) + F(1, 10**40))
    assert orient(a, b, c) == 1
    assert orient(a, b, (F(big, 3), F(big + 1, 3))) == 0


def test_angular_order():
    q = (0, 0)
    assert angular_less(q, (1, 0), (0, 1))
    assert not angular_less(q, (-1, 1), (1, 1))
    assert angular_less(q, (1, 0), (2, 0))


def test_angle_cmp_rejects_center():
    with pytest.raises(ValueError):
        angle_cmp((0, 0), (0, 0), (1, 0))


def test_compare_along_ray_simple():
    q, d = (0, 0), (1, 0)
    assert compare_along_ray(q, d, ((3, -1), (3, 1)), ((1, -1), (1, 1))) is Ordering.FARTHER
    assert compare_along_ray(q, d, ((2, -5), (3, 5)), ((4, -1), (4, 1))) is Ordering.CLOSER


def test_compare_along_ray_shared_endpoint():
    q, d = (0, 0), (1, 0)
    s1, s2 = ((2, 0), (2, 2)), ((2, 0), (4, -1))
    assert compare_along_ray(q, d, s1, s2, break_ties=False) is Ordering.EQUAL
    assert compare_along_ray(q, d, s1, s2) is Ordering.CLOSER


@pytest.mark.parametrize(
    "text, value",
    [("3", 3), ("-2", -2), ("0.1", F(1, 10)), ("1/3", F(1, 3)), ("-7/14", F(-1, 2)), ("2.50", F(5, 2))],
)
def test_to_exact(text, value):
    assert to_exact(text) == value


def test_to_exact_normalizes_integers():
    v = to_exact("4/2")
    assert v == 2 and isinstance(v, int)


coord = st.fractions(min_value=-50, max_value=50, max_denominator=20)
pt = st.tuples(coord, coord)


@given(pt, pt, pt)
def test_orient_antisymmetric(a, b, c):
    assert orient(a, b, c) == -orient(b, a, c) == orient(b, c, a)


@given(pt, pt, pt)
def test_angle_cmp_antisymmetric(q, a, b):
    if a == q or b == q:
        return
    assert angle_cmp(q, a, b) == -angle_cmp(q, b, a)

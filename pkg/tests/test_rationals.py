from fractions import Fraction

import pytest
from hypothesis import given

from conftest import intervals, rationals
from nodalkernel.rationals import (
    EMPTY,
    UNIT_OPEN,
    RatInterval,
    fmt_rat,
    interval_intersect,
    mediant,
    parse_rat,
    rat,
    rat_cmp,
    solve_linear_1d,
)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (Fraction(3, 7), Fraction(4, 7), -1),
        (Fraction(2, 4), Fraction(1, 2), 0),
        (Fraction(-1, 2), Fraction(-2, 3), 1),
    ],
)
def test_rat_cmp(a, b, expected):
    assert rat_cmp(a, b) == expected


def test_normalization_and_serialization():
    assert rat(2, 4) == Fraction(1, 2)
    assert fmt_rat(rat(2, 4)) == "1/2"
    assert fmt_rat(Fraction(6, 3)) == "2"
    assert fmt_rat(Fraction(-3, 7)) == "-3/7"
    assert parse_rat(" 14/35 ") == Fraction(2, 5)
    assert parse_rat("-4") == -4
    with pytest.raises(ValueError):
        parse_rat("1/0")
    with pytest.raises(ValueError):
        parse_rat("x")


def test_denominator_positive_after_ops():
    x = rat(3, -9)
    assert x.denominator > 0 and x == Fraction(-1, 3)


def test_huge_values_do_not_wrap():
    big = Fraction(2**200 + 1, 3**90)
    assert rat_cmp(big, big + Fraction(1, 2**300)) == -1


def test_intersect_examples():
    a = RatInterval.closed(Fraction(2, 5), Fraction(3, 5))
    b = RatInterval.closed(Fraction(3, 7), Fraction(4, 7))
    assert interval_intersect(a, b) == b
    assert RatInterval.closed(0, 1).intersect(EMPTY) == EMPTY
    assert RatInterval.make(0, Fraction(1, 2), False, False).intersect(RatInterval.closed(Fraction(1, 2), 1)) == EMPTY


def test_touching_closed_endpoints_give_a_point():
    point = RatInterval.closed(0, Fraction(1, 2)) & RatInterval.closed(Fraction(1, 2), 1)
    assert point == RatInterval.closed(Fraction(1, 2), Fraction(1, 2))
    assert Fraction(1, 2) in point


def test_invalid_construction_rejected():
    with pytest.raises(ValueError):
        RatInterval(Fraction(1), Fraction(0), True, True)
    with pytest.raises(ValueError):
        RatInterval(Fraction(1), Fraction(1), True, False)
    assert RatInterval.make(1, 1, True, False) is EMPTY


def test_str_roundtrip():
    for iv in (RatInterval.closed(Fraction(3, 7), Fraction(4, 7)), UNIT_OPEN, EMPTY,
               RatInterval.make(Fraction(-1, 2), 3, True, False)):
        assert RatInterval.parse(str(iv)) == iv
    assert str(UNIT_OPEN) == "(0, 1)"


def test_sample_is_the_mediant():
    iv = RatInterval.closed(Fraction(3, 7), Fraction(4, 7))
    assert iv.sample() == Fraction(1, 2)
    assert mediant(Fraction(8, 23), Fraction(11, 23)) == Fraction(19, 46)


def test_solve_linear_1d():
    # 5w - 2 >= 0 and 3 - 5w >= 0
    assert solve_linear_1d([(5, -2), (-5, 3)]) == RatInterval.closed(Fraction(2, 5), Fraction(3, 5))
    assert solve_linear_1d([(0, 0)]) == UNIT_OPEN
    assert solve_linear_1d([(0, -1)]) == EMPTY
    # w >= 0 is weaker than the open domain bound
    assert solve_linear_1d([(1, 0)]) == UNIT_OPEN
    assert solve_linear_1d([(1, -2)]) == EMPTY


@given(rationals, rationals)
def test_add_sub_roundtrip(a, b):
    assert (a + b) - b == a
    s = a + b
    assert Fraction(s.numerator, s.denominator) == s


@given(rationals, rationals)
def test_cmp_matches_real_order(a, b):
    assert rat_cmp(a, b) == (a > b) - (a < b)
    assert rat_cmp(a, b) == -rat_cmp(b, a)


@given(intervals(), intervals())
def test_intersect_commutative(a, b):
    assert a & b == b & a


@given(intervals(), intervals(), intervals())
def test_intersect_associative(a, b, c):
    assert (a & b) & c == a & (b & c)


@given(intervals())
def test_intersect_idempotent(a):
    assert a & a == a


@given(intervals(), intervals(), rationals)
def test_intersect_is_set_intersection(a, b, x):
    for probe in (x, a.lo, a.hi, b.lo, b.hi):
        assert (probe in (a & b)) == (probe in a and probe in b)


@given(intervals(), intervals())
def test_intersection_is_valid(a, b):
    c = a & b
    if not c.empty:
        assert c.lo <= c.hi
        if c.lo == c.hi:
            assert c.lo_closed and c.hi_closed

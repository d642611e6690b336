from fractions import Fraction

import pytest
from hypothesis import given

from conftest import unit_slopes
from twobridge.slopes import (INFINITY, ContinuedFraction, Slope, contains, farey_slopes, intervals,
                              parse_slope, reduce_step, to_continued_fraction, to_fraction)


@pytest.mark.parametrize("text,terms", [("5/17", (3, 2, 2)), ("1/2", (2,)), ("3/8", (2, 1, 2))])
def test_continued_fraction_examples(text, terms):
    assert to_continued_fraction(text).terms == terms


@pytest.mark.parametrize("terms,value", [((2, 1, 1), Slope(2, 5)), ((7,), Slope(1, 7)), ((2, 4), Slope(4, 9))])
def test_to_fraction(terms, value):
    assert to_fraction(ContinuedFraction.normalized(terms)) == value


@pytest.mark.parametrize("terms,tilde", [((2, 1, 5), (5,)), ((2, 6), (5,)), ((3, 2, 2), (1, 2))])
def test_reduce_step(terms, tilde):
    assert reduce_step(ContinuedFraction.normalized(terms)).terms == tilde


def test_reduce_step_needs_two_terms():
    with pytest.raises(ValueError):
        reduce_step(ContinuedFraction.normalized((4,)))


@pytest.mark.parametrize("r,r1,r2", [("2/5", "1/3", "1/2"), ("3/8", "1/3", "2/5"), ("1/3", "0", "1/2")])
def test_intervals(r, r1, r2):
    iv = intervals(r)
    assert (iv.r1, iv.r2) == (parse_slope(r1), parse_slope(r2))


def test_contains():
    iv = intervals("3/8")
    for s in ("1/6", "3/10", "3/4", "5/12"):
        assert contains(iv, s)
    assert not contains(iv, "3/8")
    assert not contains(iv, INFINITY)
    assert contains(intervals("2/5"), "2/7")


def test_parse():
    assert parse_slope("inf") is INFINITY or parse_slope("inf") == INFINITY
    assert parse_slope(" 6/4 ") == Slope(3, 2)
    assert parse_slope("-3") == Slope(-3, 1)
    for bad in ("1/x", "0/0", "", "a"):
        with pytest.raises(ValueError):
            parse_slope(bad)


@given(unit_slopes(60))
def test_round_trip(r):
    cf = to_continued_fraction(r)
    assert to_fraction(cf) == r
    assert cf.terms[-1] >= 2
    assert Fraction(r.num, r.den) == Fraction(to_fraction(cf).num, to_fraction(cf).den)


@given(unit_slopes(60))
def test_r_strictly_between_endpoints(r):
    iv = intervals(r)
    assert iv.r1 < r < iv.r2
    # Farey neighbours
    assert abs(iv.r1.num * r.den - r.num * iv.r1.den) == 1
    assert abs(iv.r2.num * r.den - r.num * iv.r2.den) == 1


def test_farey_slopes_counts():
    assert len(farey_slopes(5)) == 11
    assert farey_slopes(3, lo=(-1, 1), hi=(0, 1)) == [Slope(-1, 1), Slope(-2, 3), Slope(-1, 2), Slope(-1, 3), Slope(0, 1)]

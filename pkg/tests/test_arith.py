from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parcont.arith import add, format_rational, inv, mul, neg, normalize, parse_rational

rationals = st.fractions(max_denominator=10**6)


@pytest.mark.parametrize(
    "n, d, expected",
    [(2, 4, Fraction(1, 2)), (-3, -6, Fraction(1, 2)), (0, 7, Fraction(0, 1))],
)
def test_normalize(n, d, expected):
    r = normalize(n, d)
    assert r == expected
    assert (r.numerator, r.denominator) == (expected.numerator, expected.denominator)
    assert r.denominator > 0


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        normalize(1, 0)


def test_field_ops():
    assert add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert mul(Fraction(2, 3), Fraction(3, 2)) == 1
    assert inv(Fraction(-2, 5)) == Fraction(-5, 2)
    assert neg(Fraction(1, 7)) == Fraction(-1, 7)
    with pytest.raises(ZeroDivisionError):
        inv(Fraction(0))


@pytest.mark.parametrize("r, text", [(Fraction(-3, 4), "-3/4"), (Fraction(5), "5"), (Fraction(0), "0")])
def test_format(r, text):
    assert format_rational(r) == text


@pytest.mark.parametrize("bad", ["", "1/0", "x", "1.5", "--2"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


@given(rationals)
def test_round_trip(r):
    assert parse_rational(format_rational(r)) == r


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    if a != 0:
        assert mul(a, inv(a)) == 1


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_normalize_idempotent(n, d):
    r = normalize(n, d)
    assert normalize(r.numerator, r.denominator) == r
    assert (normalize(r.numerator, r.denominator).numerator, normalize(r.numerator, r.denominator).denominator) == (
        r.numerator,
        r.denominator,
    )

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from errors import DomainError, InexactDivision
from exactcore import (IntPoly, as_integer, format_rational, parse_rational, poly_arith, poly_divmod,
                       poly_exact_div, rational_arith, rising_factorial_ext, rising_product_ext)

small_polys = st.lists(st.integers(-20, 20), max_size=6).map(IntPoly)
unit_leading_polys = st.builds(lambda lower, lead: IntPoly(tuple(lower) + (lead,)),
                               st.lists(st.integers(-20, 20), max_size=4), st.sampled_from([1, -1]))


def test_rational_arith_ops():
    assert rational_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert rational_arith(Fraction(1, 2), Fraction(1, 3), "sub") == Fraction(1, 6)
    assert rational_arith(Fraction(2, 3), Fraction(3, 4), "mul") == Fraction(1, 2)
    assert rational_arith(Fraction(2, 3), Fraction(4, 3), "div") == Fraction(1, 2)
    assert rational_arith(Fraction(2, 3), op="neg") == Fraction(-2, 3)
    assert rational_arith(Fraction(-2, 3), op="inv") == Fraction(-3, 2)


def test_rational_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rational_arith(1, 0, "div")
    with pytest.raises(ZeroDivisionError):
        rational_arith(0, op="inv")


def test_rational_unknown_op():
    with pytest.raises(ValueError):
        rational_arith(1, 2, "pow")


def test_rational_text_form():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(5) == "5/1"
    assert parse_rational("-3/2") == Fraction(-3, 2)
    for bad in ("3", "6/4", "1/-2", "a/b", "1/0"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)


@given(st.fractions())
def test_rational_text_is_canonical(q):
    assert parse_rational(format_rational(q)) == q


def test_as_integer():
    assert as_integer(Fraction(8, 2)) == 4
    assert as_integer(Fraction(1, 2)) is None


def test_poly_canonical_form():
    p = IntPoly((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert IntPoly((0, 0)).is_zero()
    assert IntPoly() == 0
    assert str(IntPoly((2, 0, 3, 0, 1))) == "x^4+3x^2+2"
    assert str(IntPoly((0, -1, 0, -1))) == "-x^3-x"


def test_poly_arith_examples():
    x = IntPoly.x()
    assert poly_arith(x + 1, x - 1, "mul") == IntPoly((-1, 0, 1))
    assert poly_arith(x, x, "sub").is_zero()
    assert poly_arith(x + 1, 3, "scale") == IntPoly((3, 3))
    with pytest.raises(ValueError):
        poly_arith(x, x, "div")


@given(small_polys, small_polys, small_polys)
def test_poly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(small_polys, st.integers(-5, 5))
def test_poly_eval_is_a_homomorphism(a, x):
    b = a * a + 1
    assert b.eval(x) == a.eval(x) ** 2 + 1


@given(small_polys, unit_leading_polys)
def test_exact_div_recovers_factor(a, b):
    assert poly_exact_div(a * b, b) == a


def test_exact_div_rejects_remainder():
    x = IntPoly.x()
    with pytest.raises(InexactDivision) as err:
        poly_exact_div(x * x + 1, x + 1)
    assert err.value.remainder == IntPoly((2,))


def test_divmod_stops_on_non_divisible_leading_coefficient():
    q, r = poly_divmod(IntPoly((0, 1)), IntPoly((0, 2)))
    assert q.is_zero()
    assert r == IntPoly((0, 1))
    with pytest.raises(ZeroDivisionError):
        poly_divmod(IntPoly((1,)), IntPoly())


def test_rising_factorial_extension():
    assert rising_factorial_ext(3, 2) == 12
    assert rising_factorial_ext(3, 0) == 1
    assert rising_factorial_ext(3, -1) == Fraction(1, 2)
    assert rising_factorial_ext(4, -2) == Fraction(1, 6)
    with pytest.raises(DomainError):
        rising_factorial_ext(1, -1)


def test_rising_product_zero_factor():
    with pytest.raises(DomainError):
        rising_product_ext(lambda t: t - 2, 3, -1)

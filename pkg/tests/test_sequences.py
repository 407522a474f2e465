from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from errors import DomainError
from exactcore import IntPoly
from sequences import (Family, FamilySpec, binomial, fib_rising_ext, fibonacci, fibonacci_poly,
                       fibonacci_poly_value, fibonomial, fibonomial_by_recurrence, fibonomial_recurrence_rhs,
                       family_term, x_fibonomial, x_fibonomial_by_recurrence, x_fibonomial_value)


def test_fibonacci_values():
    assert [fibonacci(k) for k in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    with pytest.raises(DomainError):
        fibonacci(-1)


def test_fibonacci_polynomials():
    assert fibonacci_poly(0).is_zero()
    assert fibonacci_poly(3) == IntPoly((1, 0, 1))
    assert fibonacci_poly(4) == IntPoly((0, 2, 0, 1))
    assert fibonacci_poly(5) == IntPoly((1, 0, 3, 0, 1))


@given(st.integers(0, 25), st.integers(1, 4))
def test_fibonacci_poly_value_matches_polynomial(n, x):
    assert fibonacci_poly_value(n, x) == fibonacci_poly(n).eval(x)


@given(st.integers(0, 30))
def test_fibonacci_poly_at_one_is_fibonacci(n):
    assert fibonacci_poly(n).eval(1) == fibonacci(n)


def test_binomial_conventions():
    assert binomial(5, 2) == 10
    assert binomial(3, 4) == 0
    assert binomial(3, -1) == 0
    with pytest.raises(DomainError):
        binomial(-1, 0)


def test_fibonomial_values():
    assert fibonomial(5, 2) == 15
    assert fibonomial(6, 3) == 60
    assert fibonomial(4, 0) == 1
    assert fibonomial(4, 5) == 0


def test_x_fibonomial_values():
    assert x_fibonomial(3, 1) == IntPoly((1, 0, 1))
    assert x_fibonomial(4, 2) == IntPoly((2, 0, 3, 0, 1))
    assert x_fibonomial(4, 2).eval(1) == fibonomial(4, 2)
    assert x_fibonomial(2, 3).is_zero()


@given(st.integers(0, 14), st.integers(0, 14))
def test_fibonomial_product_matches_recurrence(n, k):
    assert fibonomial(n, k) == fibonomial_by_recurrence(n, k)


@given(st.integers(0, 9), st.integers(0, 9), st.integers(1, 3))
def test_x_fibonomial_product_matches_recurrence(n, k, x):
    assert x_fibonomial(n, k) == x_fibonomial_by_recurrence(n, k)
    assert x_fibonomial(n, k).eval(x) == x_fibonomial_value(n, k, x)


def test_printed_fibonomial_recurrence_does_not_reproduce_values():
    assert fibonomial_recurrence_rhs(5, 2) == 15
    assert fibonomial_recurrence_rhs(5, 2, reading="printed") == 51


def test_fib_rising_extension():
    assert fib_rising_ext(3, 2) == 6
    assert fib_rising_ext(3, -1) == 1
    assert fib_rising_ext(4, -2) == Fraction(1, 2)


def test_family_spec_validation():
    assert FamilySpec(Family.fibonacci, r=5).r is None
    assert FamilySpec("b", r=3).family is Family.b
    with pytest.raises(DomainError):
        FamilySpec(Family.b)
    with pytest.raises(DomainError):
        FamilySpec(Family.d, r=0)


def test_family_terms():
    assert [family_term(FamilySpec(Family.hilbert), k) for k in (1, 2, 3)] == [1, 2, 3]
    assert [family_term(FamilySpec(Family.a), k) for k in (1, 2, 3)] == [1, 3, 6]
    assert [family_term(FamilySpec(Family.c), k) for k in (1, 2)] == [4, 10]
    assert [family_term(FamilySpec(Family.b, 3), k) for k in (1, 2, 3)] == [1, 4, 10]
    assert [family_term(FamilySpec(Family.d, 2), k) for k in (1, 2, 3)] == [1, 2, 6]
    assert family_term(FamilySpec(Family.fibpoly), 3) == IntPoly((1, 0, 1))
    with pytest.raises(DomainError):
        family_term(FamilySpec(Family.hilbert), 0)

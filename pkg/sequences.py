"""Sequences the reciprocal Hankel matrices are built from.

Fibonomials are computed as (numerator product) / (denominator product) with
the division checked, so every call doubles as an integrality test. The
recurrences are kept as independent cross-checks."""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from errors import DomainError, InexactDivision, InternalError
from exactcore import IntPoly, poly_exact_div, rising_product_ext


class Family(str, Enum):
    fibonacci = "fibonacci"
    fibpoly = "fibpoly"
    hilbert = "hilbert"
    a = "a"
    b = "b"
    c = "c"
    d = "d"

    @property
    def needs_r(self):
        return self in (Family.b, Family.d)

    @property
    def is_polynomial(self):
        return self is Family.fibpoly


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    r: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family.needs_r:
            if self.r is None or self.r < 1:
                raise DomainError(f"family {self.family.value} needs r >= 1, got {self.r}")
        elif self.r is not None:
            # r is implicit for the other families
            object.__setattr__(self, "r", None)


# ─── Fibonacci numbers and polynomials ───

@lru_cache(maxsize=None)
def fibonacci(n):
    if n < 0:
        raise DomainError(f"negative Fibonacci index {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def fibonacci_poly(n):
    if n < 0:
        raise DomainError(f"negative Fibonacci polynomial index {n}")
    x = IntPoly.x()
    prev, cur = IntPoly(), IntPoly((1,))
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x * cur + prev
    return cur


@lru_cache(maxsize=None)
def fibonacci_poly_value(n, x):
    """f_n(x) at an integer point, without building the polynomial."""
    if n < 0:
        raise DomainError(f"negative Fibonacci polynomial index {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, x * b + a
    return a


def fib_rising_ext(a, m):
    """F_a·F_{a+1}···F_{a+m−1}; for m < 0, 1/(F_{a−1}···F_{a+m})."""
    if a < 1:
        raise DomainError(f"Fibonacci product base must be >= 1, got {a}")
    return rising_product_ext(fibonacci, a, m, name="Fibonacci")


# ─── Binomials and Fibonomials ───

def binomial(n, k):
    if n < 0:
        raise DomainError(f"binomial with negative top {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def fibonomial(n, k):
    if n < 0:
        raise DomainError(f"Fibonomial with negative top {n}")
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(1, k + 1):
        num *= fibonacci(n - i + 1)
        den *= fibonacci(i)
    q, rem = divmod(num, den)
    if rem:
        raise InternalError(f"Fibonomial (({n},{k})) is not an integer: {num}/{den}")
    return q


@lru_cache(maxsize=None)
def x_fibonomial(n, k):
    if n < 0:
        raise DomainError(f"x-Fibonomial with negative top {n}")
    if k < 0 or k > n:
        return IntPoly()
    num, den = IntPoly((1,)), IntPoly((1,))
    for i in range(1, k + 1):
        num = num * fibonacci_poly(n - i + 1)
        den = den * fibonacci_poly(i)
    try:
        return poly_exact_div(num, den)
    except InexactDivision as e:
        raise InternalError(f"x-Fibonomial (({n},{k}))_x is not an integer polynomial") from e


@lru_cache(maxsize=None)
def x_fibonomial_value(n, k, x):
    """((n,k))_x at an integer point, from the values f_i(x)."""
    if n < 0:
        raise DomainError(f"x-Fibonomial with negative top {n}")
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(1, k + 1):
        num *= fibonacci_poly_value(n - i + 1, x)
        den *= fibonacci_poly_value(i, x)
    value = Fraction(num, den)
    if value.denominator != 1:
        raise InternalError(f"x-Fibonomial (({n},{k}))_x at x={x} is not an integer: {value}")
    return value.numerator


@lru_cache(maxsize=None)
def fibonomial_by_recurrence(n, k):
    """((n,k)) = F_{k−1}((n−1,k)) + F_{n−k+1}((n−1,k−1))."""
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return (fibonacci(k - 1) * fibonomial_by_recurrence(n - 1, k)
            + fibonacci(n - k + 1) * fibonomial_by_recurrence(n - 1, k - 1))


@lru_cache(maxsize=None)
def x_fibonomial_by_recurrence(n, k):
    if k < 0 or k > n:
        return IntPoly()
    if k == 0 or k == n:
        return IntPoly((1,))
    return (fibonacci_poly(k - 1) * x_fibonomial_by_recurrence(n - 1, k)
            + fibonacci_poly(n - k + 1) * x_fibonomial_by_recurrence(n - 1, k - 1))


def fibonomial_recurrence_rhs(n, k, reading="standard"):
    """Right-hand side of the Fibonomial recurrence from product-formula values.

    `printed` repeats ((n,k)) in the last slot; `standard` uses ((n−1,k−1))."""
    last = fibonomial(n, k) if reading == "printed" else fibonomial(n - 1, k - 1)
    return fibonacci(k - 1) * fibonomial(n - 1, k) + fibonacci(n - k + 1) * last


# ─── Families ───

def family_term(spec, k):
    """a_k for the family; k counts from 1."""
    if k < 1:
        raise DomainError(f"family terms start at k = 1, got {k}")
    fam = spec.family
    if fam is Family.fibonacci:
        term = fibonacci(k)
    elif fam is Family.fibpoly:
        term = fibonacci_poly(k)
    elif fam is Family.hilbert:
        term = k
    elif fam is Family.a:
        term = binomial(k + 1, 2)
    elif fam is Family.b:
        term = binomial(k + spec.r - 1, spec.r)
    elif fam is Family.c:
        term = binomial(k + 3, 3)
    elif fam is Family.d:
        term = fibonomial(k + spec.r - 1, spec.r)
    else:
        raise DomainError(f"unknown family {fam}")
    if term == 0:
        raise DomainError(f"zero term for {fam.value} at k = {k}")
    return term

"""Closed-form inverse entries of the reciprocal Hankel families.

Every entry function takes 1-based (i, j) with 1 <= i, j <= n and is
independent of the others. Summands are exposed separately because the
certificate checker works on exactly the terms these sums add up."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from errors import DomainError, IntegralityViolation
from exactcore import IntPoly, as_integer, rising_factorial_ext
from hankel import POLY, RATIONAL, ExactMatrix
from sequences import (Family, FamilySpec, binomial, fib_rising_ext, fibonacci, fibonacci_poly, fibonacci_poly_value,
                       fibonomial, x_fibonomial, x_fibonomial_value)


class SignVariant(str, Enum):
    """Readings of the sign of the Fibonomial-family summand.

    printed_k: (-1)^e(n,i,k); variant_j: (-1)^e(n,i,j), constant over k;
    alternating_k: (-1)^(e(n,i,k)+n+j+1). Only alternating_k inverts R_n for n >= 3."""
    printed_k = "printed_k"
    variant_j = "variant_j"
    alternating_k = "alternating_k"


DEFAULT_SIGN_VARIANT = SignVariant.alternating_k


@dataclass(frozen=True)
class MatrixSpec:
    family: FamilySpec
    n: int
    sign_variant: SignVariant = DEFAULT_SIGN_VARIANT

    def __post_init__(self):
        object.__setattr__(self, "sign_variant", SignVariant(self.sign_variant))
        if self.n < 1:
            raise DomainError(f"matrix size must be >= 1, got {self.n}")
        if self.family.family is Family.d:
            if self.family.r < 2:
                raise DomainError("family d is defined for r >= 2 only")
        elif self.sign_variant is not DEFAULT_SIGN_VARIANT:
            raise DomainError("sign_variant only applies to family d")

    @classmethod
    def of(cls, family, n, r=None, sign_variant=DEFAULT_SIGN_VARIANT):
        return cls(FamilySpec(Family(family), r), n, sign_variant)

    @property
    def r(self):
        return self.family.r

    def label(self):
        parts = [self.family.family.value, f"n={self.n}"]
        if self.r is not None:
            parts.append(f"r={self.r}")
        if self.family.family is Family.d:
            parts.append(self.sign_variant.value)
        return " ".join(parts)


def _check_index(n, i, j):
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"entry ({i},{j}) outside a {n}x{n} matrix")


def _sign(e):
    return -1 if e % 2 else 1


def sign_exponent_e(n, i, j):
    """e(n,i,j) = n(i+j+1) + C(i,2) + C(j,2) + 1; only its parity matters."""
    return n * (i + j + 1) + binomial(i, 2) + binomial(j, 2) + 1


# ─── Hilbert ───

def hilbert_inverse_entry(n, i, j):
    _check_index(n, i, j)
    return ((-1) ** (i + j) * (i + j - 1)
            * binomial(n + i - 1, n - j) * binomial(n + j - 1, n - i) * binomial(i + j - 2, i - 1) ** 2)


# ─── Filbert (numbers and polynomials) ───

def filbert_inverse_entry(n, i, j):
    """W_ij(n)."""
    _check_index(n, i, j)
    return (_sign(sign_exponent_e(n, i, j)) * fibonacci(i + j - 1)
            * fibonomial(n + i - 1, n - j) * fibonomial(n + j - 1, n - i) * fibonomial(i + j - 2, i - 1) ** 2)


def filbert_poly_inverse_entry(n, i, j):
    """V_ij(n), an integer polynomial."""
    _check_index(n, i, j)
    entry = (fibonacci_poly(i + j - 1) * x_fibonomial(n + i - 1, n - j)
             * x_fibonomial(n + j - 1, n - i) * x_fibonomial(i + j - 2, i - 1) ** 2)
    return entry * _sign(sign_exponent_e(n, i, j))


def filbert_numerator(n, i, j, x):
    """V_ij(n) at an integer x, allowed outside 1 <= i, j <= n (zero there by convention)."""
    if n + i - 1 < 0 or n + j - 1 < 0 or i + j - 2 < 0:
        raise DomainError(f"Filbert entry ({n},{i},{j}) has a negative Fibonomial top")
    return (_sign(sign_exponent_e(n, i, j)) * fibonacci_poly_value(i + j - 1, x)
            * x_fibonomial_value(n + i - 1, n - j, x) * x_fibonomial_value(n + j - 1, n - i, x)
            * x_fibonomial_value(i + j - 2, i - 1, x) ** 2)


def filbert_summand(n, i, m, j, x):
    """P(n,i,m,j): the j-th term of entry (i, m) of V(n)·R_n(f_k(x)), at an integer x."""
    return Fraction(filbert_numerator(n, i, j, x), fibonacci_poly_value(j + m - 1, x))


# ─── Binomial families ───

def a_inverse_entry(n, i, j):
    """A_ij(n); the half-integer summands must add up to an integer."""
    _check_index(n, i, j)
    total = Fraction(0)
    for k in range(j):
        total += ((-1) ** (i + k + 1) * binomial(n + i, n - k) * binomial(n + k, n - i)
                  * binomial(i + k - 1, k) * binomial(i + k, k) * Fraction(i, 2))
    value = as_integer(total)
    if value is None:
        raise IntegralityViolation(f"A_{i}{j}({n}) = {total} is not an integer", value=total, where=(n, i, j))
    return value


def b_summand(n, i, j, k, r):
    """S(n,i,j,k): the k-th term of B_ij(n, r)."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    return ((-1) ** (i + k + 1)
            * binomial(n + i + r - 2, i) * binomial(n, i) * binomial(n + k + r - 2, k) * binomial(n, k)
            * i * i * rising_factorial_ext(i + j, r - 2)
            / (r * rising_factorial_ext(i + k, r - 1)))


def b_inverse_entry(n, i, j, r):
    _check_index(n, i, j)
    return sum((b_summand(n, i, j, k, r) for k in range(j)), Fraction(0))


def c_summand(n, i, j, k):
    return ((-1) ** (i + k + 1)
            * binomial(n + i + 2, i + k + 1) * binomial(n + k + 1, i + k + 1)
            * binomial(i + k + 1, i) * binomial(i + k, i) * Fraction(i * (j - k), 3))


def c_inverse_entry(n, i, j):
    """C_ij(n); every summand is asserted integral, not just the total."""
    _check_index(n, i, j)
    total = 0
    for k in range(j):
        term = c_summand(n, i, j, k)
        value = as_integer(term)
        if value is None:
            raise IntegralityViolation(f"summand k={k} of C_{i}{j}({n}) = {term} is not an integer",
                                       value=term, where=(n, i, j, k))
        total += value
    return total


# ─── Fibonomial family ───

def _d_sign_exponent(n, i, j, k, sign_variant):
    sign_variant = SignVariant(sign_variant)
    if sign_variant is SignVariant.printed_k:
        return sign_exponent_e(n, i, k)
    if sign_variant is SignVariant.variant_j:
        return sign_exponent_e(n, i, j)
    return sign_exponent_e(n, i, k) + n + j + 1


def d_summand(n, i, j, k, r, sign_variant=DEFAULT_SIGN_VARIANT):
    if r < 2:
        raise DomainError("D(n, r) is defined for r >= 2 only")
    return (_sign(_d_sign_exponent(n, i, j, k, sign_variant))
            * fibonomial(n + i + r - 2, i) * fibonomial(n, i) * fibonomial(n + k + r - 2, k) * fibonomial(n, k)
            * fibonacci(i) ** 2 * fib_rising_ext(i + j, r - 2)
            / (fibonacci(r) * fib_rising_ext(i + k, r - 1)))


def d_inverse_entry(n, i, j, r, sign_variant=DEFAULT_SIGN_VARIANT):
    _check_index(n, i, j)
    return sum((d_summand(n, i, j, k, r, sign_variant) for k in range(j)), Fraction(0))


# ─── Assembly ───

def closed_form_entry(spec, i, j):
    n, fam = spec.n, spec.family.family
    if fam is Family.fibonacci:
        return filbert_inverse_entry(n, i, j)
    if fam is Family.fibpoly:
        return filbert_poly_inverse_entry(n, i, j)
    if fam is Family.hilbert:
        return hilbert_inverse_entry(n, i, j)
    if fam is Family.a:
        return a_inverse_entry(n, i, j)
    if fam is Family.b:
        return b_inverse_entry(n, i, j, spec.r)
    if fam is Family.c:
        return c_inverse_entry(n, i, j)
    if fam is Family.d:
        return d_inverse_entry(n, i, j, spec.r, spec.sign_variant)
    raise DomainError(f"unknown family {fam}")


def assemble_inverse(spec):
    kind = POLY if spec.family.family.is_polynomial else RATIONAL
    return ExactMatrix.from_function(spec.n, spec.n, lambda i, j: closed_form_entry(spec, i, j), kind=kind)


def poly_entry_function(n):
    """V-formula entries as a function (i, j) -> IntPoly, for the cleared check."""
    return lambda i, j: filbert_poly_inverse_entry(n, i, j)


__all__ = [
    "SignVariant", "DEFAULT_SIGN_VARIANT", "MatrixSpec", "sign_exponent_e", "hilbert_inverse_entry",
    "filbert_inverse_entry", "filbert_poly_inverse_entry", "filbert_numerator", "filbert_summand", "a_inverse_entry", "b_summand",
    "b_inverse_entry", "c_summand", "c_inverse_entry", "d_summand", "d_inverse_entry",
    "closed_form_entry", "assemble_inverse", "poly_entry_function", "IntPoly",
]

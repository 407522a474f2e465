"""Exact dense matrices, reciprocal Hankel construction and the Bareiss oracle.

Entries live in numpy object arrays, so numpy does the bookkeeping and the
element type (Fraction or IntPoly) does the arithmetic. All math-facing
indices are 1-based."""
import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Tuple

import numpy as np

from errors import DimensionError, DomainError, InternalError, SingularError, UnsupportedElementKind
from exactcore import IntPoly, poly_exact_div
from sequences import Family, family_term, fibonacci_poly, fibonacci_poly_value

_log = logging.getLogger('filbert')

RATIONAL = "rational"
POLY = "poly"


def _kind_of(value):
    if isinstance(value, IntPoly):
        return POLY
    if isinstance(value, (int, Fraction)):
        return RATIONAL
    raise UnsupportedElementKind(f"unsupported matrix element {value!r}")


def _coerce(value, kind):
    if kind == RATIONAL:
        return Fraction(value)
    return value if isinstance(value, IntPoly) else IntPoly((value,))


class ExactMatrix:
    """Immutable dense matrix over Fraction or IntPoly."""

    __slots__ = ("_a", "kind")

    def __init__(self, array, kind):
        self._a = array
        self._a.flags.writeable = False
        self.kind = kind

    @classmethod
    def from_rows(cls, rows, kind=None):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        n_cols = len(rows[0])
        if any(len(r) != n_cols for r in rows):
            raise DimensionError("ragged rows")
        if kind is None:
            kind = _kind_of(rows[0][0])
        arr = np.empty((len(rows), n_cols), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if _kind_of(v) != kind and not (kind == POLY and isinstance(v, int)):
                    raise UnsupportedElementKind("mixed element kinds in one matrix")
                arr[i, j] = _coerce(v, kind)
        return cls(arr, kind)

    @classmethod
    def from_function(cls, n_rows, n_cols, fn, kind=None):
        """Build from fn(i, j) with 1-based indices."""
        return cls.from_rows(
            [[fn(i, j) for j in range(1, n_cols + 1)] for i in range(1, n_rows + 1)], kind=kind)

    @classmethod
    def identity(cls, n, kind=RATIONAL):
        one, zero = (Fraction(1), Fraction(0)) if kind == RATIONAL else (IntPoly((1,)), IntPoly())
        return cls.from_function(n, n, lambda i, j: one if i == j else zero, kind=kind)

    @property
    def n_rows(self):
        return self._a.shape[0]

    @property
    def n_cols(self):
        return self._a.shape[1]

    @property
    def is_square(self):
        return self.n_rows == self.n_cols

    def entry(self, i, j):
        return self._a[i - 1, j - 1]

    def rows(self):
        return [list(row) for row in self._a]

    def entries(self):
        """Row-major list of entries."""
        return list(self._a.flat)

    def transpose(self):
        return ExactMatrix(self._a.T.copy(), self.kind)

    def is_symmetric(self):
        return self.is_square and self == self.transpose()

    def evaluate(self, x):
        """Substitute an integer for x in a polynomial matrix."""
        if self.kind != POLY:
            raise UnsupportedElementKind("evaluate() needs a polynomial matrix")
        return ExactMatrix.from_function(
            self.n_rows, self.n_cols, lambda i, j: Fraction(self.entry(i, j).eval(x)), kind=RATIONAL)

    def all_integral(self):
        return self.kind == RATIONAL and all(v.denominator == 1 for v in self._a.flat)

    def max_denominator(self):
        return max(v.denominator for v in self._a.flat)

    def first_difference(self, other) -> Optional[Tuple[int, int]]:
        """1-based position of the first differing entry, row-major."""
        if self._a.shape != other._a.shape:
            return (0, 0)
        for (i, j), v in np.ndenumerate(self._a):
            if v != other._a[i, j]:
                return (i + 1, j + 1)
        return None

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.kind == other.kind and self.first_difference(other) is None

    def __hash__(self):
        return hash((self.kind, tuple(self._a.flat)))

    def __repr__(self):
        return f"ExactMatrix({self.n_rows}x{self.n_cols}, {self.kind})"


@dataclass
class VerificationReport:
    spec: Any
    n: int
    identity_holds: bool
    first_failure: Optional[Tuple[int, int, Any]]
    elapsed: float
    method: str = "product"
    oracle_mismatch: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.identity_holds != (self.first_failure is None):
            raise InternalError("identity_holds must be true exactly when there is no failure")


# ─── Construction and products ───

def build_reciprocal_hankel(spec, n):
    """R_n(a_k): entry (i, j) is 1/a_{i+j−1}."""
    if n < 1:
        raise DimensionError(f"matrix size must be >= 1, got {n}")
    if spec.family is Family.fibpoly:
        raise UnsupportedElementKind("fibpoly Hankel entries are rational functions; use cleared_identity_check")
    terms = {k: family_term(spec, k) for k in range(1, 2 * n)}
    return ExactMatrix.from_function(n, n, lambda i, j: Fraction(1, terms[i + j - 1]), kind=RATIONAL)


def build_reciprocal_hankel_at(n, x):
    """R_n(f_k(x)) at an integer point x >= 1."""
    if n < 1:
        raise DimensionError(f"matrix size must be >= 1, got {n}")
    if x < 1:
        raise DomainError(f"Fibonacci polynomials are evaluated at x >= 1, got {x}")
    return ExactMatrix.from_function(n, n, lambda i, j: Fraction(1, fibonacci_poly_value(i + j - 1, x)),
                                     kind=RATIONAL)


def mat_mul(a, b):
    if a.n_cols != b.n_rows:
        raise DimensionError(f"cannot multiply {a.n_rows}x{a.n_cols} by {b.n_rows}x{b.n_cols}")
    if a.kind != b.kind:
        raise UnsupportedElementKind(f"cannot multiply {a.kind} by {b.kind} matrices")
    product = a._a.dot(b._a)
    return ExactMatrix(np.array(product, dtype=object), a.kind)


def identity_failure(product):
    """First (i, m, value) where a square product differs from I, else None."""
    eye = ExactMatrix.identity(product.n_rows, product.kind)
    pos = product.first_difference(eye)
    if pos is None:
        return None
    i, m = pos
    return (i, m, product.entry(i, m))


# ─── Bareiss oracle ───

def _bareiss_gauss_jordan(a, n):
    """Fraction-free Gauss-Jordan on an integer augmented matrix, in place.

    Returns the final pivot d; afterwards the left block is d·I and the right
    block is d·A^{-1}."""
    width = len(a[0])
    prev = 1
    for k in range(n):
        pivot_row = next((p for p in range(k, n) if a[p][k] != 0), None)
        if pivot_row is None:
            raise SingularError(f"matrix is singular (no pivot in column {k + 1})")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
        pivot = a[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(width):
                q, rem = divmod(pivot * row_i[j] - aik * row_k[j], prev)
                if rem:
                    raise InternalError("Bareiss step produced an inexact division")
                row_i[j] = q
        prev = pivot
    return prev


def bareiss_inverse(m):
    """Exact inverse by fraction-free elimination; the result is checked against m."""
    if not m.is_square:
        raise DimensionError(f"cannot invert a {m.n_rows}x{m.n_cols} matrix")
    if m.kind != RATIONAL:
        raise UnsupportedElementKind("bareiss_inverse works on rational matrices")
    n = m.n_rows
    rows = m.rows()
    # Scale each row by the lcm of its denominators: A = D·M
    scales = [math.lcm(*(v.denominator for v in row)) for row in rows]
    aug = []
    for i, row in enumerate(rows):
        ints = [int(v * scales[i]) for v in row]
        aug.append(ints + [1 if j == i else 0 for j in range(n)])
    d = _bareiss_gauss_jordan(aug, n)
    # M^{-1} = A^{-1}·D
    inv = ExactMatrix.from_function(
        n, n, lambda i, j: Fraction(aug[i - 1][n + j - 1] * scales[j - 1], d), kind=RATIONAL)
    if identity_failure(mat_mul(m, inv)) is not None:
        raise InternalError("Bareiss inverse failed the m·inv = I check")
    return inv


# ─── Denominator-cleared polynomial identity ───

def cleared_identity_check(inv_entries, spec, n):
    """Check Σ_j inv(i,j)/f_{j+m−1} = δ_im with denominators cleared.

    With P_m = ∏_j f_{j+m−1}, each P_m / f_{j+m−1} is an exact polynomial, so
    the whole check stays in integer polynomials."""
    if spec.family is not Family.fibpoly:
        raise UnsupportedElementKind(f"cleared check is for fibpoly, got {spec.family.value}")
    if n < 1:
        raise DimensionError(f"matrix size must be >= 1, got {n}")
    t0 = time.time()
    entries = {(i, j): inv_entries(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    failure = None
    for m in range(1, n + 1):
        factors = [fibonacci_poly(j + m - 1) for j in range(1, n + 1)]
        p_m = IntPoly((1,))
        for f in factors:
            p_m = p_m * f
        cofactors = [poly_exact_div(p_m, f) for f in factors]
        for i in range(1, n + 1):
            total = IntPoly()
            for j in range(1, n + 1):
                total = total + entries[i, j] * cofactors[j - 1]
            expected = p_m if i == m else IntPoly()
            if total != expected:
                residual = total - expected
                if failure is None or (i, m) < failure[:2]:
                    failure = (i, m, residual)
                break
    elapsed = time.time() - t0
    _log.debug(f'cleared identity check n={n}: {"ok" if failure is None else "FAIL"} ({elapsed:.2f}s)')
    return VerificationReport(spec=spec, n=n, identity_holds=failure is None,
                              first_failure=failure, elapsed=elapsed, method="cleared")

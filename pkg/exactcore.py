"""Exact arithmetic: rationals, dense integer polynomials, extended rising products.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
Polynomials are dense, ascending-coefficient, immutable."""
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple

from errors import DomainError, InexactDivision

Rational = Fraction

_RATIONAL_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}

_RATIONAL_RE = re.compile(r'^(-?\d+)/(\d+)$')


def rational_arith(a, b=None, op="add"):
    """Apply `op` to Rationals. `neg` and `inv` are unary and ignore `b`.

    Division by zero raises ZeroDivisionError."""
    a = Fraction(a)
    if op == "neg":
        return -a
    if op == "inv":
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a
    if op not in _RATIONAL_OPS:
        raise ValueError(f"Unknown rational op: {op}")
    return _RATIONAL_OPS[op](a, Fraction(b))


def format_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    """Parse the canonical "p/q" form; non-canonical input is rejected."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"Not a rational of the form p/q: {text!r}")
    value = Fraction(int(m.group(1)), int(m.group(2)))
    if format_rational(value) != text.strip():
        raise ValueError(f"Rational not in lowest terms: {text!r}")
    return value


def as_integer(q):
    """Return q as int, or None when it has a denominator."""
    q = Fraction(q)
    if q.denominator != 1:
        return None
    return q.numerator


# ─── Integer polynomials ───

def _trim(coeffs):
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in x, coefficients ascending; zero is the empty tuple.

    Deliberately not a sequence type: numpy object arrays hold these as scalars."""
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def eval(self, x):
        """Horner evaluation; exact for int or Fraction x."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # arithmetic

    @staticmethod
    def _lift(other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items):
        return cls(int(s) for s in items)


_POLY_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
}


def poly_arith(a, b, op="add"):
    """`op` in add/sub/mul, or `scale` with `b` an integer."""
    if op == "scale":
        if not isinstance(b, int):
            raise TypeError("scale expects an integer factor")
        return a * b
    if op not in _POLY_OPS:
        raise ValueError(f"Unknown polynomial op: {op}")
    return _POLY_OPS[op](a, b)


def poly_divmod(a, b):
    """Long division over the integers.

    Stops as soon as a leading coefficient is not divisible by lc(b); the
    remainder returned then is the partial remainder at that point."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lc = b.leading()
    quot = [0] * max(len(rem) - db, 0)
    for shift in range(len(rem) - 1 - db, -1, -1):
        top = rem[shift + db]
        if top == 0:
            continue
        if top % lc:
            return IntPoly(quot), IntPoly(rem[:shift + db + 1])
        q = top // lc
        quot[shift] = q
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= q * c
    return IntPoly(quot), IntPoly(rem)


def poly_exact_div(a, b):
    q, r = poly_divmod(a, b)
    if not r.is_zero():
        raise InexactDivision(f"({a}) is not divisible by ({b})", remainder=r)
    if q * b != a:
        raise InexactDivision(f"({a}) / ({b}) failed the multiplication check", remainder=a - q * b)
    return q


# ─── Rising products with negative length ───

def rising_product_ext(term: Callable[[int], int], a: int, m: int, name="term"):
    """term(a)·term(a+1)···term(a+m−1) for m ≥ 0;
    1/(term(a−1)···term(a+m)) for m < 0 (the Gamma-ratio extension)."""
    if m >= 0:
        acc = 1
        for t in range(a, a + m):
            acc *= term(t)
        return Fraction(acc)
    acc = 1
    for t in range(a + m, a):
        value = term(t)
        if value == 0 or t < 1:
            raise DomainError(f"{name} product ({a}, {m}) reaches a zero factor at index {t}")
        acc *= value
    return Fraction(1, acc)


def rising_factorial_ext(a, m):
    """(a)_m extended to negative m as Γ(a+m)/Γ(a)."""
    if a < 1:
        raise DomainError(f"rising factorial base must be >= 1, got {a}")
    return rising_product_ext(lambda t: t, a, m, name="rising factorial")

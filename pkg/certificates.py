"""Exact checks of the recurrences and telescoping relations behind the inverse formulas.

Polynomial relations are evaluated at integer points x >= 1, where every
f_k(x) with k >= 1 is positive. Each residual is a list of terms whose sum
must vanish; `mutate` negates the first term so tests can confirm a checker
actually notices a broken relation.

Relations that were printed with a typo are evaluated under every reading;
the report says which readings hold and the verdict uses the one that does."""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple

import config
from closedform import b_summand, c_summand, filbert_summand, sign_exponent_e
from errors import DomainError
from sequences import binomial, fibonacci_poly_value, x_fibonomial_value

_log = logging.getLogger('filbert')


class CertificateId(str, Enum):
    M_zero = "M_zero"
    filrec = "filrec"
    filsum = "filsum"
    pn1m = "pn1m"
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    H_rec = "H_rec"
    Z_rec = "Z_rec"
    T_symm = "T_symm"
    Y_tel = "Y_tel"

    @property
    def uses_x(self):
        return self in _X_CERTIFICATES


_X_CERTIFICATES = {CertificateId.M_zero, CertificateId.filrec, CertificateId.filsum, CertificateId.pn1m,
                   CertificateId.G1, CertificateId.G2, CertificateId.G3}


@dataclass(frozen=True)
class CertGrid:
    n_max: int = config.CERT_N_MAX
    r_values: Tuple[int, ...] = config.CERT_R_VALUES
    n_min: int = 1

    def __post_init__(self):
        object.__setattr__(self, "r_values", tuple(self.r_values))
        if self.n_min < 1 or self.n_max < self.n_min:
            raise DomainError(f"certificate grid needs 1 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        if not self.r_values or any(r < 1 for r in self.r_values):
            raise DomainError(f"certificate grid needs r >= 1, got {self.r_values}")

    def sizes(self, lowest=1):
        return range(max(lowest, self.n_min), self.n_max + 1)


@dataclass
class Violation:
    relation: str
    where: Dict[str, int]
    residual: Fraction


@dataclass
class CertReport:
    id: CertificateId
    grid: CertGrid
    x_values: Tuple[int, ...]
    violations: List[Violation] = field(default_factory=list)
    readings: Dict[str, bool] = field(default_factory=dict)
    facts: Dict[str, bool] = field(default_factory=dict)
    evaluations: int = 0
    elapsed: float = 0.0

    @property
    def holds(self):
        return not self.violations


def _require(condition, message):
    if not condition:
        raise DomainError(message)


def _combine(terms, mutate=False):
    if mutate:
        terms = [-terms[0]] + list(terms[1:])
    return sum(terms, Fraction(0))


def _pm(e):
    return -1 if e % 2 else 1


# ─── Filbert polynomial summands ───

def filbert_row_sum(n, i, m, x):
    """p(n,i,m) = Σ_{j=1..n} P(n,i,m,j)."""
    return sum((filbert_summand(n, i, m, j, x) for j in range(1, n + 1)), Fraction(0))


def m_zero_terms(n, i, j, x):
    _require(2 <= i <= n and 2 <= j <= n, f"M(n,i,j) needs 2 <= i, j <= n, got ({n},{i},{j})")
    f = lambda k: fibonacci_poly_value(k, x)
    return [
        _pm(i + j) * f(n + i - 1) * f(n + j - 1) * f(i + j - 2),
        f(n - i) * f(n - j) * f(i + j - 2),
        _pm(i + j - 1) * f(n + i - 2) * f(n + j - 1) * f(i + j - 1),
        f(n - i + 1) * f(n - j) * f(i + j - 1),
    ]


def addition_formula_terms(n, i, j, x):
    """f_{n−i}f_{i+j−2} + f_{n−i+1}f_{i+j−1} − f_{n+j−1}."""
    f = lambda k: fibonacci_poly_value(k, x)
    return [f(n - i) * f(i + j - 2), f(n - i + 1) * f(i + j - 1), -f(n + j - 1)]


def docagne_terms(n, i, j, x):
    """f_{n+i−2}f_{i+j−1} − f_{n+i−1}f_{i+j−2} − (−1)^{i+j} f_{n−j}."""
    f = lambda k: fibonacci_poly_value(k, x)
    return [f(n + i - 2) * f(i + j - 1), -f(n + i - 1) * f(i + j - 2), -_pm(i + j) * f(n - j)]


def _filrec_sign(n, i, reading):
    return _pm(n + i + 1) if reading == "corrected" else _pm(n + i)


def filrec_terms(n, i, m, j, x, reading="corrected"):
    _require(n >= 2 and 2 <= i <= n and 1 <= m <= n and 1 <= j <= n,
             f"summand recurrence needs 2 <= i <= n and 1 <= m, j <= n, got ({n},{i},{m},{j})")
    f = lambda k: fibonacci_poly_value(k, x)
    P = lambda *args: filbert_summand(*args, x)
    return [
        -f(n - i + 1) * f(n + i - 2) * (P(n, i - 1, m, j) - P(n - 1, i - 1, m, j)),
        _filrec_sign(n, i, reading) * f(i - 1) ** 2 * (P(n, i, m, j) - P(n - 1, i, m, j)),
    ]


def filsum_terms(n, i, m, x, reading="corrected"):
    _require(n >= 2 and 2 <= i <= n and 1 <= m <= n,
             f"row-sum recurrence needs 2 <= i <= n and 1 <= m <= n, got ({n},{i},{m})")
    f = lambda k: fibonacci_poly_value(k, x)
    p = lambda *args: filbert_row_sum(*args, x)
    return [
        -f(n - i + 1) * f(n + i - 2) * (p(n, i - 1, m) - p(n - 1, i - 1, m)),
        _filrec_sign(n, i, reading) * f(i - 1) ** 2 * (p(n, i, m) - p(n - 1, i, m)),
    ]


def pn1m_terms(n, m, j, x, sign="corrected", last_row=1):
    """First-row recurrence in m; `last_row` is the row index of the final term."""
    _require(n >= 2 and 2 <= m <= n and 1 <= j <= n and 1 <= last_row <= n,
             f"first-row recurrence needs 2 <= m <= n and 1 <= j <= n, got ({n},{m},{j})")
    f = lambda k: fibonacci_poly_value(k, x)
    P = lambda *args: filbert_summand(*args, x)
    second = 1 if sign == "corrected" else -1
    return [
        _pm(m + 1) * f(n - 1) * f(n + m - 2) * P(n, 1, m - 1, j),
        second * f(n) * f(n - m + 1) * P(n - 1, 1, m - 1, j),
        _pm(m) * f(n - 1) * f(n + m - 1) * P(n, 1, m, j),
        f(n) * f(n - m) * P(n - 1, last_row, m, j),
    ]


def _g1(m, j, x):
    f = lambda k: fibonacci_poly_value(k, x)
    return _pm(j - 1) * f(j) * f(j - 1) * filbert_summand(m, 1, m, j, x)


def g1_terms(m, j, x):
    _require(1 <= j <= m, f"G1 relation needs 1 <= j <= m, got ({m},{j})")
    f = lambda k: fibonacci_poly_value(k, x)
    return [_pm(m) * f(m) * f(m - 1) * filbert_summand(m, 1, m, j, x), -_g1(m, j + 1, x), _g1(m, j, x)]


def _g2(n, j, x):
    return _pm(j - 1) * fibonacci_poly_value(j, x) ** 2 * filbert_summand(n, 1, 1, j, x)


def g2_terms(n, j, x):
    _require(1 <= j <= n, f"G2 relation needs 1 <= j <= n, got ({n},{j})")
    return [_pm(n) * fibonacci_poly_value(n, x) ** 2 * filbert_summand(n, 1, 1, j, x),
            -_g2(n, j + 1, x), _g2(n, j, x)]


def _g3(n, j, x):
    f = lambda k: fibonacci_poly_value(k, x)
    head = Fraction(f(3 * n + j - 1), f(n + j - 1)) + 2 * _pm(n)
    tail = x_fibonomial_value(2 * n - 1, n - j + 1, x)
    if j >= 2:
        tail *= x_fibonomial_value(n + j - 2, j - 2, x) ** 2
    else:
        tail = 0
    return _pm(sign_exponent_e(n, n, j)) * head * tail


def g3_terms(n, j, x):
    _require(n >= 1 and 1 <= j <= n + 1, f"G3 relation needs 1 <= j <= n+1, got ({n},{j})")
    return [filbert_summand(n + 1, n + 1, n + 1, j, x), -filbert_summand(n, n, n, j, x),
            -_g3(n, j + 1, x), _g3(n, j, x)]


# ─── Binomial-family summands ───

def h_term(n, i, m, j, k, r):
    """Summand of entry (i, m) of B(n,r)·R_n(b(r))."""
    return b_summand(n, i, j, k, r) / binomial(j + m + r - 2, r)


def h_entry(n, i, m, r):
    return sum((h_term(n, i, m, j, k, r) for j in range(1, n + 1) for k in range(j)), Fraction(0))


def h_rec_terms(n, i, m, j, k, r):
    _require(n >= 2 and 2 <= i <= n and 2 <= m <= n and 1 <= j <= n and 0 <= k < j and r >= 1,
             f"H recurrence needs 2 <= i, m <= n, 0 <= k < j <= n, got ({n},{i},{m},{j},{k}), r={r}")
    H = lambda nn, ii, mm: h_term(nn, ii, mm, j, k, r)
    a = n * n
    b = (n + r - 2) ** 2
    return [
        a * (i - m + r - 1) * (n - i + r - 1) * (n + i + r - 3) * H(n - 1, i - 1, m - 1),
        -a * (i - m - 1) * (n - i + r - 1) * (n + i + r - 3) * H(n - 1, i - 1, m),
        a * (i - 1) ** 2 * (i - m + 1) * H(n - 1, i, m - 1),
        -a * (i - 1) ** 2 * (i - m - r + 1) * H(n - 1, i, m),
        -b * (i - m + r - 1) * (n - i + 1) * (n + i - 1) * H(n, i - 1, m - 1),
        b * (i - m - 1) * (n - i + 1) * (n + i - 1) * H(n, i - 1, m),
        -b * (i - 1) ** 2 * (i - m + 1) * H(n, i, m - 1),
        b * (i - 1) ** 2 * (i - m - r + 1) * H(n, i, m),
    ]


def z_term(n, i, m, j, k):
    """Summand of entry (i, m) of C(n)·R_n(c)."""
    return c_summand(n, i, j, k) / binomial(j + m + 2, 3)


def z_entry(n, i, m):
    return sum((z_term(n, i, m, j, k) for j in range(1, n + 1) for k in range(j)), Fraction(0))


def z_rec_terms(n, i, m, j, k):
    _require(n >= 2 and 2 <= i <= n and 1 <= m <= n and 1 <= j <= n and 0 <= k < j,
             f"Z recurrence needs 2 <= i <= n, 1 <= m <= n, 0 <= k < j <= n, got ({n},{i},{m},{j},{k})")
    Z = lambda nn, ii: z_term(nn, ii, m, j, k)
    return [
        (n - i + 1) * (n + i + 1) * Z(n - 1, i - 1),
        -(n - i + 1) * (n + i + 1) * Z(n, i - 1),
        i * (i - 1) * Z(n - 1, i),
        -i * (i - 1) * Z(n, i),
    ]


def _zeil_factor(n, row, k, r):
    return Fraction(-(2 * n + r) * k * k * (row + k + r - 2), (n + r - 1) ** 2 * (n - row + 1) * (n - k + 1))


def t_term(n, i, j, k, r):
    _require(1 <= i <= n and 0 <= k <= n, f"T needs i <= n and k <= n, got ({n},{i},{j},{k})")
    return _zeil_factor(n, i, k, r) * b_summand(n, i, j, k, r)


def t_tel_terms(n, i, j, k, r):
    """S(n+1,i,j,k) − S(n,i,j,k) − (T(n,i,j,k+1) − T(n,i,j,k))."""
    _require(1 <= i <= n and 1 <= j <= n and 0 <= k < j, f"T telescoping needs 0 <= k < j <= n, got ({n},{i},{j},{k})")
    return [b_summand(n + 1, i, j, k, r), -b_summand(n, i, j, k, r), -t_term(n, i, j, k + 1, r), t_term(n, i, j, k, r)]


def t_symm_terms(n, i, j, r):
    _require(1 <= i <= n and 1 <= j <= n, f"T symmetry needs 1 <= i, j <= n, got ({n},{i},{j})")
    return [t_term(n, i, j, j, r), -t_term(n, i, j, 0, r), -t_term(n, j, i, i, r), t_term(n, j, i, 0, r)]


def u_term(n, i, j, k, r):
    """Summand of entry (1, i) of R_n(b(r))·B(n,r) along row j."""
    return b_summand(n, j, i, k, r) / binomial(j + r - 1, r)


def y_term(n, i, j, k, r):
    _require(1 <= j <= n and 0 <= k <= n, f"Y needs j <= n and k <= n, got ({n},{i},{j},{k})")
    return _zeil_factor(n, j, k, r) * u_term(n, i, j, k, r)


def y_tel_terms(n, i, j, k, r):
    _require(1 <= i <= n and 1 <= j <= n and 0 <= k < i, f"Y telescoping needs 0 <= k < i <= n, got ({n},{i},{j},{k})")
    return [u_term(n + 1, i, j, k, r), -u_term(n, i, j, k, r), -y_term(n, i, j, k + 1, r), y_term(n, i, j, k, r)]


def u_initial_value(i, r, k_from=0):
    """Σ_{j=1..i} Σ_{k=k_from..i−1} U(i,i,j,k); zero for i > 1 when k starts at 0."""
    return sum((u_term(i, i, j, k, r) for j in range(1, i + 1) for k in range(k_from, i)), Fraction(0))


# ─── Driver ───

class _Run:
    """Collects residuals for one report."""

    def __init__(self, report, mutate):
        self.report = report
        self.mutate = mutate

    def check(self, relation, where, terms, primary=True):
        self.report.evaluations += 1
        residual = _combine(terms, self.mutate and primary)
        if residual != 0:
            self.report.violations.append(Violation(relation, dict(where), residual))
        return residual == 0

    def fact(self, name, where, value, expected):
        self.report.evaluations += 1
        ok = value == expected
        self.report.facts[name] = self.report.facts.get(name, True) and ok
        if not ok:
            self.report.violations.append(Violation(name, dict(where), Fraction(value) - expected))


def _reading_holds(points, terms_fn):
    return all(_combine(terms_fn(*p)) == 0 for p in points)


def _check_m_zero(run, grid, xs):
    for x in xs:
        for n in grid.sizes(2):
            for i in range(2, n + 1):
                for j in range(2, n + 1):
                    where = dict(n=n, i=i, j=j, x=x)
                    run.check("M", where, m_zero_terms(n, i, j, x))
                    run.check("addition", where, addition_formula_terms(n, i, j, x), primary=False)
                    run.check("docagne", where, docagne_terms(n, i, j, x), primary=False)


def _check_filrec(run, grid, xs):
    points = [(n, i, m, j, x) for x in xs for n in grid.sizes(2)
              for i in range(2, n + 1) for m in range(1, n + 1) for j in range(1, n + 1)]
    for reading in ("printed", "corrected"):
        run.report.readings[f"sign_{reading}"] = _reading_holds(
            points, lambda *p: filrec_terms(*p, reading=reading))
    for n, i, m, j, x in points:
        run.check("filrec", dict(n=n, i=i, m=m, j=j, x=x), filrec_terms(n, i, m, j, x))


def _check_filsum(run, grid, xs):
    points = [(n, i, m, x) for x in xs for n in grid.sizes(2) for i in range(2, n + 1) for m in range(1, n + 1)]
    for reading in ("printed", "corrected"):
        run.report.readings[f"sign_{reading}"] = _reading_holds(
            points, lambda *p: filsum_terms(*p, reading=reading))
    for n, i, m, x in points:
        run.check("filsum", dict(n=n, i=i, m=m, x=x), filsum_terms(n, i, m, x))


def _check_pn1m(run, grid, xs):
    points = [(n, m, j, x) for x in xs for n in grid.sizes(2) for m in range(2, n + 1) for j in range(1, n + 1)]
    for sign in ("printed", "corrected"):
        run.report.readings[f"sign_{sign}_last_row_1"] = _reading_holds(
            points, lambda *p: pn1m_terms(*p, sign=sign, last_row=1))
        run.report.readings[f"sign_{sign}_last_row_i"] = all(
            _combine(pn1m_terms(n, m, j, x, sign=sign, last_row=i)) == 0
            for n, m, j, x in points for i in range(2, n + 1))
    for n, m, j, x in points:
        run.check("pn1m", dict(n=n, m=m, j=j, x=x), pn1m_terms(n, m, j, x))


def _check_g1(run, grid, xs):
    for x in xs:
        for m in grid.sizes():
            for j in range(1, m + 1):
                run.check("G1", dict(m=m, j=j, x=x), g1_terms(m, j, x))
            if m > 1:
                run.fact("p(m,1,m)=0", dict(m=m, x=x), filbert_row_sum(m, 1, m, x), 0)


def _check_g2(run, grid, xs):
    for x in xs:
        for n in grid.sizes():
            for j in range(1, n + 1):
                run.check("G2", dict(n=n, j=j, x=x), g2_terms(n, j, x))
            run.fact("p(n,1,1)=1", dict(n=n, x=x), filbert_row_sum(n, 1, 1, x), 1)


def _check_g3(run, grid, xs):
    for x in xs:
        for n in grid.sizes():
            for j in range(1, n + 2):
                run.check("G3", dict(n=n, j=j, x=x), g3_terms(n, j, x))
            run.fact("p(n,n,n)=1", dict(n=n, x=x), filbert_row_sum(n, n, n, x), 1)


def _check_h_rec(run, grid, xs):
    for r in grid.r_values:
        for n in grid.sizes(2):
            for i in range(2, n + 1):
                for m in range(2, n + 1):
                    for j in range(1, n + 1):
                        for k in range(j):
                            run.check("H", dict(n=n, i=i, m=m, j=j, k=k, r=r), h_rec_terms(n, i, m, j, k, r))
        for n in grid.sizes():
            run.fact("h(n,1,1)=1", dict(n=n, r=r), h_entry(n, 1, 1, r), 1)
            run.fact("h(n,n,n)=1", dict(n=n, r=r), h_entry(n, n, n, r), 1)
            if n > 1:
                run.fact("h(m,1,m)=0", dict(m=n, r=r), h_entry(n, 1, n, r), 0)


def _check_z_rec(run, grid, xs):
    for n in grid.sizes(2):
        for i in range(2, n + 1):
            for m in range(1, n + 1):
                for j in range(1, n + 1):
                    for k in range(j):
                        run.check("Z", dict(n=n, i=i, m=m, j=j, k=k), z_rec_terms(n, i, m, j, k))
    for n in grid.sizes():
        for i in range(1, n + 1):
            for m in range(1, n + 1):
                run.fact("z(n,i,m)=delta", dict(n=n, i=i, m=m), z_entry(n, i, m), int(i == m))


def _check_t_symm(run, grid, xs):
    for r in grid.r_values:
        for n in grid.sizes():
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    run.check("T_symm", dict(n=n, i=i, j=j, r=r), t_symm_terms(n, i, j, r))
                    for k in range(j):
                        run.check("T_tel", dict(n=n, i=i, j=j, k=k, r=r), t_tel_terms(n, i, j, k, r), primary=False)
                    step = (sum((b_summand(n + 1, i, j, k, r) for k in range(j)), Fraction(0))
                            - sum((b_summand(n, i, j, k, r) for k in range(j)), Fraction(0)))
                    run.fact("B(n+1)-B(n)=T(j)-T(0)", dict(n=n, i=i, j=j, r=r),
                             step, t_term(n, i, j, j, r) - t_term(n, i, j, 0, r))


def _check_y_tel(run, grid, xs):
    for r in grid.r_values:
        for n in grid.sizes():
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    for k in range(i):
                        run.check("Y", dict(n=n, i=i, j=j, k=k, r=r), y_tel_terms(n, i, j, k, r))
    initial = [(i, r) for r in grid.r_values for i in grid.sizes(2)]
    run.report.readings["initial_k_from_0"] = all(u_initial_value(i, r, 0) == 0 for i, r in initial)
    run.report.readings["initial_k_from_1"] = all(u_initial_value(i, r, 1) == 0 for i, r in initial)
    for i, r in initial:
        run.fact("initial value", dict(i=i, r=r), u_initial_value(i, r, 0), 0)


_CHECKERS = {
    CertificateId.M_zero: _check_m_zero,
    CertificateId.filrec: _check_filrec,
    CertificateId.filsum: _check_filsum,
    CertificateId.pn1m: _check_pn1m,
    CertificateId.G1: _check_g1,
    CertificateId.G2: _check_g2,
    CertificateId.G3: _check_g3,
    CertificateId.H_rec: _check_h_rec,
    CertificateId.Z_rec: _check_z_rec,
    CertificateId.T_symm: _check_t_symm,
    CertificateId.Y_tel: _check_y_tel,
}


def default_grid(cert_id):
    cert_id = CertificateId(cert_id)
    return CertGrid(n_max=config.CERT_N_MAX if cert_id.uses_x else config.CERT_SUM_N_MAX)


def check_certificate(cert_id, grid=None, x_values=config.CERT_X_VALUES, mutate=False) -> CertReport:
    """Evaluate one certificate over a grid; violations are data, not errors."""
    cert_id = CertificateId(cert_id)
    grid = grid or default_grid(cert_id)
    xs = tuple(x_values) if cert_id.uses_x else ()
    if cert_id.uses_x and (not xs or any(x < 1 for x in xs)):
        raise DomainError(f"Fibonacci polynomial certificates need x >= 1, got {x_values}")
    report = CertReport(id=cert_id, grid=grid, x_values=xs)
    t0 = time.time()
    _CHECKERS[cert_id](_Run(report, mutate), grid, xs)
    report.elapsed = time.time() - t0
    _log.info(f'certificate {cert_id.value}: {"holds" if report.holds else "VIOLATED"} '
              f'({report.evaluations} evaluations, {len(report.violations)} violations, {report.elapsed:.2f}s)')
    return report

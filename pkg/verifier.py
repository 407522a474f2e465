"""End-to-end inverse verification, the integrality scans and structural checks."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

from sympy import factorint

import config
from closedform import DEFAULT_SIGN_VARIANT, MatrixSpec, SignVariant, assemble_inverse, poly_entry_function
from errors import DomainError, IntegralityViolation
from hankel import (VerificationReport, bareiss_inverse, build_reciprocal_hankel, cleared_identity_check,
                    identity_failure, mat_mul)
from sequences import Family, FamilySpec

_log = logging.getLogger('filbert')


# ─── Inverse verification ───

def verify_inverse(spec: MatrixSpec) -> VerificationReport:
    """Check closed form · R_n = I (both orders), or the cleared identity for fibpoly."""
    n = spec.n
    if spec.family.family is Family.fibpoly:
        report = cleared_identity_check(poly_entry_function(n), spec.family, n)
        report.spec = spec
        return report

    t0 = time.time()
    try:
        inv = assemble_inverse(spec)
    except IntegralityViolation as e:
        _log.warning(f'verify {spec.label()}: {e}')
        where = e.where or (n, 0, 0)
        return VerificationReport(spec=spec, n=n, identity_holds=False, first_failure=(where[1], where[2], e.value),
                                  elapsed=time.time() - t0, method="integrality")
    report = verify_candidate(spec, inv, build_reciprocal_hankel(spec.family, n))
    report.elapsed = time.time() - t0
    _log.info(f'verify {spec.label()}: {"ok" if report.identity_holds else "FAIL"} ({report.elapsed:.2f}s)')
    return report


def verify_candidate(spec, candidate, hankel) -> VerificationReport:
    """Check a proposed inverse against R_n in both orders.

    On failure the candidate is also compared with the Bareiss inverse, so
    the report can name the first wrong entry."""
    t0 = time.time()
    failure = identity_failure(mat_mul(candidate, hankel)) or identity_failure(mat_mul(hankel, candidate))
    mismatch = None
    if failure is not None:
        mismatch = candidate.first_difference(bareiss_inverse(hankel))
    return VerificationReport(spec=spec, n=hankel.n_rows, identity_holds=failure is None, first_failure=failure,
                              elapsed=time.time() - t0, oracle_mismatch=mismatch)


# ─── Integrality conjecture ───

def integrality_predicate(n, r, reading="maximal"):
    """n ≡ 0 or 1 mod q for the prime powers q dividing r.

    `maximal` takes q = p^a with p^a exactly dividing r; `all` takes every
    p^b with b <= a. The two agree: a residue of 0 or 1 mod p^a stays 0 or 1
    mod every p^b below it."""
    if n < 1 or r < 1:
        raise DomainError(f"integrality predicate needs n, r >= 1, got ({n}, {r})")
    if reading not in ("maximal", "all"):
        raise ValueError(f"Unknown reading: {reading}")
    for p, a in factorint(r).items():
        exponents = [a] if reading == "maximal" else range(1, a + 1)
        if any(n % p ** b not in (0, 1) for b in exponents):
            return False
    return True


@dataclass
class ScanRow:
    n: int
    r: int
    is_integral: bool
    max_denominator: int
    predicted_integral: bool
    agrees: bool
    denominators_divide_r: bool = True
    readings_agree: bool = True


def _integrality_cell(cell):
    n, r = cell
    inv = bareiss_inverse(build_reciprocal_hankel(FamilySpec(Family.b, r), n))
    max_den = inv.max_denominator()
    is_integral = max_den == 1
    predicted = integrality_predicate(n, r)
    return ScanRow(
        n=n, r=r, is_integral=is_integral, max_denominator=max_den, predicted_integral=predicted,
        agrees=is_integral == predicted,
        denominators_divide_r=all(r % v.denominator == 0 for v in inv.entries()),
        readings_agree=predicted == integrality_predicate(n, r, reading="all"),
    )


def _run_cells(fn, cells, workers=None):
    """Yield fn(cell) in cell order, in worker processes when FILBERT_THREADS > 1."""
    workers = config.worker_count() if workers is None else workers
    if workers <= 1 or len(cells) <= 1:
        for cell in cells:
            yield fn(cell)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, cells, chunksize=max(1, len(cells) // (4 * workers)))


def _cells(n_max, r_min, r_max):
    if n_max < 1 or r_max < r_min:
        raise DomainError(f"empty scan grid n <= {n_max}, {r_min} <= r <= {r_max}")
    return [(n, r) for r in range(r_min, r_max + 1) for n in range(1, n_max + 1)]


def iter_integrality_scan(n_max, r_max, workers=None):
    """Rows in (r, n) order as they complete."""
    t0 = time.time()
    for row in _run_cells(_integrality_cell, _cells(n_max, 1, r_max), workers):
        if not row.agrees:
            _log.warning(f'integrality scan: predicate disagrees at n={row.n} r={row.r}')
        if not row.denominators_divide_r:
            _log.warning(f'integrality scan: denominator not dividing r at n={row.n} r={row.r}')
        yield row
    _log.info(f'integrality scan n<={n_max} r<={r_max} done ({time.time() - t0:.1f}s)')


def integrality_scan(n_max, r_max, workers=None):
    return sorted(iter_integrality_scan(n_max, r_max, workers), key=lambda row: (row.r, row.n))


# ─── Fibonomial conjecture ───

@dataclass
class FiboScanRow:
    n: int
    r: int
    sign_variant: str
    matches: bool
    first_mismatch: Optional[Tuple[int, int]]
    validating_variants: Tuple[str, ...]
    fibonomial_integral: bool
    binomial_integral: bool
    parity_agrees: bool


def _fibonomial_cell(cell, sign_variant):
    n, r = cell
    oracle = bareiss_inverse(build_reciprocal_hankel(FamilySpec(Family.d, r), n))
    mismatches = {}
    for variant in SignVariant:
        formula = assemble_inverse(MatrixSpec(FamilySpec(Family.d, r), n, variant))
        mismatches[variant] = formula.first_difference(oracle)
    binomial_integral = bareiss_inverse(build_reciprocal_hankel(FamilySpec(Family.b, r), n)).all_integral()
    fibonomial_integral = oracle.all_integral()
    return FiboScanRow(
        n=n, r=r, sign_variant=sign_variant.value,
        matches=mismatches[sign_variant] is None,
        first_mismatch=mismatches[sign_variant],
        validating_variants=tuple(v.value for v in SignVariant if mismatches[v] is None),
        fibonomial_integral=fibonomial_integral, binomial_integral=binomial_integral,
        parity_agrees=fibonomial_integral == binomial_integral,
    )


class _FiboCell:
    """Picklable cell function with the variant bound."""

    def __init__(self, sign_variant):
        self.sign_variant = sign_variant

    def __call__(self, cell):
        return _fibonomial_cell(cell, self.sign_variant)


def iter_fibonomial_scan(n_max, r_max, sign_variant=DEFAULT_SIGN_VARIANT, workers=None):
    sign_variant = SignVariant(sign_variant)
    if r_max < 2:
        raise DomainError("the Fibonomial family needs r >= 2")
    t0 = time.time()
    for row in _run_cells(_FiboCell(sign_variant), _cells(n_max, 2, r_max), workers):
        if not row.parity_agrees:
            _log.info(f'fibonomial scan: integrality differs from the binomial case at n={row.n} r={row.r}')
        yield row
    _log.info(f'fibonomial scan n<={n_max} r<={r_max} {sign_variant.value} done ({time.time() - t0:.1f}s)')


def fibonomial_scan(n_max, r_max, sign_variant=DEFAULT_SIGN_VARIANT, workers=None):
    return sorted(iter_fibonomial_scan(n_max, r_max, sign_variant, workers), key=lambda row: (row.r, row.n))


# ─── Structural checks ───

@dataclass
class StructuralReport:
    spec: MatrixSpec
    symmetric: bool
    sign_blocks: Optional[bool] = None


def _sign_block(n, i):
    # Blocks are {1,2},{3,4},... for odd n and {1},{2,3},{4,5},... for even n
    return (i - 1) // 2 if n % 2 else i // 2


def sign_blocks_hold(matrix, n):
    """Nonzero-entry signs are constant on 2x2 blocks and alternate between adjacent blocks."""
    base = None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = matrix.entry(i, j)
            if v == 0:
                continue
            sign = 1 if v > 0 else -1
            expected = (-1) ** (_sign_block(n, i) + _sign_block(n, j))
            if base is None:
                base = sign * expected
            elif sign * expected != base:
                return False
    return True


def structural_checks(spec: MatrixSpec) -> StructuralReport:
    inv = assemble_inverse(spec)
    report = StructuralReport(spec=spec, symmetric=inv.is_symmetric())
    if spec.family.family is Family.fibonacci:
        report.sign_blocks = sign_blocks_hold(inv, spec.n)
    return report

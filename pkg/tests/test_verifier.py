import pytest
from hypothesis import given, strategies as st

from closedform import MatrixSpec, SignVariant, assemble_inverse
from errors import ConfigError, DomainError
from exactcore import IntPoly
from hankel import ExactMatrix, RATIONAL
from sequences import Family
import config
from verifier import (fibonomial_scan, integrality_predicate, integrality_scan, sign_blocks_hold,
                      structural_checks, verify_inverse)


def test_verify_filbert():
    report = verify_inverse(MatrixSpec.of(Family.fibonacci, 5))
    assert report.identity_holds
    assert report.first_failure is None
    assert report.method == "product"


@pytest.mark.parametrize("family,r", [("hilbert", None), ("a", None), ("b", 3), ("c", None), ("d", 3)])
def test_verify_every_numeric_family(family, r):
    assert verify_inverse(MatrixSpec.of(family, 4, r=r)).identity_holds


def test_verify_printed_sign_fails():
    report = verify_inverse(MatrixSpec.of(Family.d, 2, r=2, sign_variant=SignVariant.printed_k))
    assert not report.identity_holds
    assert report.first_failure is not None
    assert report.oracle_mismatch == (1, 2)


@pytest.mark.parametrize("n", [1, 3])
def test_verify_poly_family_uses_cleared_check(n):
    report = verify_inverse(MatrixSpec.of(Family.fibpoly, n))
    assert report.identity_holds
    assert report.method == "cleared"


def test_integrality_predicate_examples():
    assert integrality_predicate(3, 3)
    assert not integrality_predicate(2, 3)
    assert integrality_predicate(4, 4)
    assert not integrality_predicate(2, 4)
    assert integrality_predicate(7, 1)
    assert integrality_predicate(9, 12)
    with pytest.raises(DomainError):
        integrality_predicate(0, 2)


@given(st.integers(1, 200), st.integers(1, 200))
def test_predicate_readings_are_equivalent(n, r):
    assert integrality_predicate(n, r, "maximal") == integrality_predicate(n, r, "all")


def test_integrality_scan_small():
    rows = integrality_scan(5, 4, workers=1)
    assert len(rows) == 20
    assert [(row.r, row.n) for row in rows] == sorted((row.r, row.n) for row in rows)
    assert all(row.agrees and row.denominators_divide_r and row.readings_agree for row in rows)
    by_cell = {(row.n, row.r): row for row in rows}
    assert not by_cell[2, 3].is_integral
    assert by_cell[2, 3].max_denominator == 3
    assert by_cell[3, 3].is_integral
    assert all(by_cell[n, 1].is_integral for n in range(1, 6))


def test_scan_with_worker_processes_matches_serial():
    assert integrality_scan(4, 3, workers=2) == integrality_scan(4, 3, workers=1)


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("FILBERT_THREADS", "zero")
    with pytest.raises(ConfigError):
        config.worker_count()
    monkeypatch.setenv("FILBERT_THREADS", "0")
    with pytest.raises(ConfigError):
        config.worker_count()
    monkeypatch.setenv("FILBERT_THREADS", "3")
    assert config.worker_count() == 3


def test_fibonomial_scan_identifies_sign_variant():
    rows = fibonomial_scan(4, 3, workers=1)
    assert all(row.matches for row in rows)
    assert all("alternating_k" in row.validating_variants for row in rows)
    assert all(row.validating_variants == ("alternating_k",) for row in rows if row.n >= 3)
    by_cell = {(row.n, row.r): row for row in rows}
    assert not by_cell[2, 3].fibonomial_integral
    assert not by_cell[2, 3].binomial_integral
    assert by_cell[2, 3].parity_agrees


def test_fibonomial_scan_printed_sign():
    rows = fibonomial_scan(2, 2, SignVariant.printed_k, workers=1)
    row = next(r for r in rows if r.n == 2)
    assert not row.matches
    assert row.first_mismatch == (1, 2)


def test_fibonomial_scan_rejects_constant_sign():
    rows = fibonomial_scan(3, 2, SignVariant.variant_j, workers=1)
    row = next(r for r in rows if r.n == 3)
    assert not row.matches
    assert row.first_mismatch == (1, 2)
    assert row.validating_variants == ("alternating_k",)


def test_fibonomial_scan_needs_r_2():
    with pytest.raises(DomainError):
        fibonomial_scan(3, 1)


def test_structural_checks():
    report = structural_checks(MatrixSpec.of(Family.fibonacci, 4))
    assert report.symmetric and report.sign_blocks
    assert structural_checks(MatrixSpec.of(Family.b, 5, r=3)).symmetric
    assert structural_checks(MatrixSpec.of(Family.fibonacci, 1)).sign_blocks
    assert structural_checks(MatrixSpec.of(Family.hilbert, 3)).sign_blocks is None


@pytest.mark.parametrize("n", range(1, 11))
def test_filbert_sign_blocks(n):
    assert sign_blocks_hold(assemble_inverse(MatrixSpec.of(Family.fibonacci, n)), n)


def test_sign_blocks_reject_a_flipped_entry():
    w = assemble_inverse(MatrixSpec.of(Family.fibonacci, 3))
    rows = w.rows()
    rows[0][0] = -rows[0][0]
    assert not sign_blocks_hold(ExactMatrix.from_rows(rows, kind=RATIONAL), 3)


@pytest.mark.slow
def test_integrality_conjecture_full_range():
    rows = integrality_scan(config.SCAN_N_MAX, config.SCAN_R_MAX)
    assert len(rows) == 200
    assert all(row.agrees and row.denominators_divide_r for row in rows)


@pytest.mark.slow
def test_fibonomial_conjecture_desk_range():
    rows = fibonomial_scan(config.FIBO_SCAN_N_MAX, config.FIBO_SCAN_R_MAX)
    assert len(rows) == 50
    assert all(row.matches for row in rows)
    assert all(row.validating_variants == ("alternating_k",) for row in rows if row.n >= 3)


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_poly_family_cleared_check_up_to_6(n):
    assert verify_inverse(MatrixSpec.of(Family.fibpoly, n)).identity_holds


@pytest.mark.slow
@pytest.mark.parametrize("n", [11, 12])
def test_filbert_sign_blocks_up_to_12(n):
    assert sign_blocks_hold(assemble_inverse(MatrixSpec.of(Family.fibonacci, n)), n)

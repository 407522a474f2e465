"""Request-level operations shared by the command line and the HTTP API."""
import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

from closedform import DEFAULT_SIGN_VARIANT, MatrixSpec, assemble_inverse
from errors import DomainError, UnsupportedElementKind
from hankel import (POLY, bareiss_inverse, build_reciprocal_hankel, build_reciprocal_hankel_at,
                    cleared_identity_check)
from sequences import Family, FamilySpec
from verifier import verify_candidate

_bench_log = logging.getLogger('filbert.bench')


def hankel_matrix(family, n, r=None, x=None):
    """R_n for a family; fibpoly needs an evaluation point."""
    family = Family(family)
    if family is Family.fibpoly:
        if x is None:
            raise UnsupportedElementKind("fibpoly Hankel matrices need --x (entries are rational functions)")
        return build_reciprocal_hankel_at(n, x)
    return build_reciprocal_hankel(FamilySpec(family, r), n)


def inverse_matrix(family, n, r=None, method="closed", sign_variant=DEFAULT_SIGN_VARIANT, x=None):
    family = Family(family)
    if method == "closed":
        inv = assemble_inverse(MatrixSpec.of(family, n, r, sign_variant))
        return inv.evaluate(x) if inv.kind == POLY and x is not None else inv
    if method == "bareiss":
        return bareiss_inverse(hankel_matrix(family, n, r, x))
    raise DomainError(f"unknown method {method!r}")


def _describe(family, n, r, sign_variant):
    try:
        return MatrixSpec.of(family, n, r, sign_variant)
    except DomainError:
        return FamilySpec(Family(family), r)


def verify_matrix(fields, matrix):
    """Verify a serialized inverse (as produced by inv) against its Hankel matrix."""
    family, n = Family(fields["family"]), fields["n"]
    spec = _describe(family, n, fields.get("r"), fields.get("sign_variant") or DEFAULT_SIGN_VARIANT)
    if matrix.kind == POLY:
        if family is not Family.fibpoly:
            raise UnsupportedElementKind(f"polynomial entries given for family {family.value}")
        report = cleared_identity_check(lambda i, j: matrix.entry(i, j), FamilySpec(family), n)
        report.spec = spec
        return report
    return verify_candidate(spec, matrix, hankel_matrix(family, n, fields.get("r"), fields.get("x")))


@dataclass
class BenchResult:
    spec: MatrixSpec
    x: Optional[int]
    closed_elapsed: float
    bareiss_elapsed: float
    equal: bool
    first_difference: Optional[Tuple[int, int]]


def bench(spec: MatrixSpec, x=None) -> BenchResult:
    """Closed-form assembly against Bareiss on the same matrix."""
    family = spec.family.family
    if family is Family.fibpoly and x is None:
        x = 1
    t0 = time.time()
    closed = assemble_inverse(spec)
    if closed.kind == POLY:
        closed = closed.evaluate(x)
    t1 = time.time()
    oracle = bareiss_inverse(hankel_matrix(family, spec.n, spec.r, x))
    t2 = time.time()
    diff = closed.first_difference(oracle)
    result = BenchResult(spec=spec, x=x if family is Family.fibpoly else None, closed_elapsed=t1 - t0,
                         bareiss_elapsed=t2 - t1, equal=diff is None, first_difference=diff)
    _bench_log.info(f'bench {spec.label()}: closed {result.closed_elapsed:.3f}s, '
                    f'bareiss {result.bareiss_elapsed:.3f}s, {"equal" if result.equal else "DIFFER"}')
    return result

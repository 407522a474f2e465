"""Canonical JSON and CSV encoding of matrices and reports.

Every exact value is a string: rationals as "p/q", polynomials as arrays of
decimal coefficient strings, lowest degree first."""
import csv
import io
from dataclasses import asdict
from fractions import Fraction

import rfc8785

from closedform import MatrixSpec, SignVariant
from errors import DimensionError, UnsupportedElementKind
from exactcore import IntPoly, format_rational, parse_rational
from hankel import POLY, RATIONAL, ExactMatrix
from sequences import Family

SCAN_FIELDS = ["n", "r", "is_integral", "max_denominator", "predicted_integral", "agrees",
               "denominators_divide_r", "readings_agree"]
FIBO_SCAN_FIELDS = ["n", "r", "sign_variant", "matches", "first_mismatch", "validating_variants",
                    "fibonomial_integral", "binomial_integral", "parity_agrees"]


def canonical_dumps(doc) -> str:
    return rfc8785.dumps(doc).decode("utf-8")


def encode_value(v):
    if isinstance(v, IntPoly):
        return v.to_json()
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    raise UnsupportedElementKind(f"cannot encode {v!r}")


def decode_value(item):
    if isinstance(item, list):
        return IntPoly.from_json(item)
    return parse_rational(item)


def _spec_fields(family, n, r=None, sign_variant=None):
    doc = {"family": Family(family).value, "n": n}
    if r is not None:
        doc["r"] = r
    if sign_variant is not None and Family(family) is Family.d:
        doc["sign_variant"] = SignVariant(sign_variant).value
    return doc


def matrix_doc(matrix: ExactMatrix, family, n, r=None, sign_variant=None, x=None):
    doc = _spec_fields(family, n, r, sign_variant)
    if x is not None:
        doc["x"] = x
    doc["entries"] = [[encode_value(v) for v in row] for row in matrix.rows()]
    return doc


def parse_matrix_doc(doc):
    """Inverse of matrix_doc: returns (fields, ExactMatrix)."""
    try:
        rows = [[decode_value(item) for item in row] for row in doc["entries"]]
        fields = {"family": Family(doc["family"]), "n": int(doc["n"]), "r": doc.get("r"),
                  "sign_variant": doc.get("sign_variant"), "x": doc.get("x")}
    except (KeyError, TypeError) as e:
        raise DimensionError(f"malformed matrix document: {e}")
    kind = POLY if rows and rows[0] and isinstance(rows[0][0], IntPoly) else RATIONAL
    matrix = ExactMatrix.from_rows(rows, kind=kind)
    if matrix.n_rows != fields["n"] or not matrix.is_square:
        raise DimensionError(f"entries are {matrix.n_rows}x{matrix.n_cols}, expected n = {fields['n']}")
    return fields, matrix


def _elapsed_ms(elapsed):
    return int(round(elapsed * 1000))


def verification_doc(report, timing=True):
    spec = report.spec
    if isinstance(spec, MatrixSpec):
        doc = _spec_fields(spec.family.family, spec.n, spec.r, spec.sign_variant)
    else:
        doc = _spec_fields(spec.family, report.n, spec.r)
    failure = None
    if report.first_failure is not None:
        i, m, value = report.first_failure
        failure = {"i": i, "m": m, "value": encode_value(value)}
    doc.update({
        "identity_holds": report.identity_holds,
        "first_failure": failure,
        "oracle_mismatch": list(report.oracle_mismatch) if report.oracle_mismatch else None,
        "method": report.method,
    })
    if timing:
        doc["elapsed_ms"] = _elapsed_ms(report.elapsed)
    return doc


def scan_row_doc(row):
    doc = asdict(row)
    if "max_denominator" in doc:
        doc["max_denominator"] = str(doc["max_denominator"])
    if "first_mismatch" in doc and doc["first_mismatch"] is not None:
        doc["first_mismatch"] = list(doc["first_mismatch"])
    if "validating_variants" in doc:
        doc["validating_variants"] = list(doc["validating_variants"])
    return doc


def certificate_doc(report, timing=True):
    doc = {
        "id": report.id.value,
        "holds": report.holds,
        "grid": {"n_min": report.grid.n_min, "n_max": report.grid.n_max, "r_values": list(report.grid.r_values)},
        "x_values": list(report.x_values),
        "readings": dict(report.readings),
        "facts": dict(report.facts),
        "evaluations": report.evaluations,
        "violations": [{"relation": v.relation, "where": dict(v.where), "residual": format_rational(v.residual)}
                       for v in report.violations],
    }
    if timing:
        doc["elapsed_ms"] = _elapsed_ms(report.elapsed)
    return doc


def matrix_csv(matrix: ExactMatrix) -> str:
    if matrix.kind != RATIONAL:
        raise UnsupportedElementKind("polynomial matrices are emitted as JSON only")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in matrix.rows():
        writer.writerow([format_rational(v) for v in row])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return " ".join(str(item) for item in v)
    return str(v)


def rows_csv(rows, fields) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        doc = scan_row_doc(row)
        writer.writerow({k: _csv_cell(doc[k]) for k in fields})
    return buf.getvalue()

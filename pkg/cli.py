"""Command-line front end.

    python cli.py gen     --family fibonacci --n 4
    python cli.py inv     --family d --n 3 --r 2 --method closed --sign-variant printed_k
    python cli.py verify  --input inverse.json
    python cli.py scan    --conjecture integrality --n-max 20 --r-max 10 --format csv
    python cli.py certify --cert all --n-max 6 --x 1 2 3
    python cli.py bench   --family fibonacci --n 20

Exit status: 0 when everything checked out, 1 when a verification, scan or
certificate failed (the report is still written), 2 on usage errors."""
import argparse
import contextlib
import io
import json
import sys

import config
from certificates import CertGrid, CertificateId, check_certificate, default_grid
from closedform import DEFAULT_SIGN_VARIANT, MatrixSpec, SignVariant
from errors import DomainError, FilbertError, InternalError
from logging_config import setup_logging
from operations import bench, hankel_matrix, inverse_matrix, verify_matrix
from sequences import Family
from serialize import (FIBO_SCAN_FIELDS, SCAN_FIELDS, canonical_dumps, certificate_doc, matrix_csv, matrix_doc,
                       parse_matrix_doc, rows_csv, scan_row_doc, verification_doc)
from verifier import iter_fibonomial_scan, iter_integrality_scan, verify_inverse

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _output_options():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", "-o", help="write here instead of standard output")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times (byte-reproducible output)")
    return p


def _matrix_options(method=False):
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--sign-variant", choices=[v.value for v in SignVariant])
    p.add_argument("--x", type=int, help="evaluation point for fibpoly")
    if method:
        p.add_argument("--method", choices=["closed", "bareiss"], default="closed")
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="filbert", description="Exact inverses of reciprocal Hankel matrices")
    verbs = parser.add_subparsers(dest="verb", required=True)
    out = _output_options()

    verbs.add_parser("gen", parents=[_matrix_options(), out], help="build R_n for a family")
    verbs.add_parser("inv", parents=[_matrix_options(method=True), out], help="closed-form or Bareiss inverse")
    p = verbs.add_parser("verify", parents=[_matrix_options(), out], help="check a closed form against R_n")
    p.add_argument("--input", help="inverse written by `inv` (JSON)")
    p = verbs.add_parser("scan", parents=[out], help="run a conjecture scan")
    p.add_argument("--conjecture", choices=["integrality", "fibonomial"], required=True)
    p.add_argument("--n-max", type=int, help="defaults to the config scan grid")
    p.add_argument("--r-max", type=int)
    p.add_argument("--sign-variant", choices=[v.value for v in SignVariant], default=DEFAULT_SIGN_VARIANT.value)
    p = verbs.add_parser("certify", parents=[out], help="check proof certificates")
    p.add_argument("--cert", choices=[c.value for c in CertificateId] + ["all"], default="all")
    p.add_argument("--n-max", type=int)
    p.add_argument("--x", type=int, nargs="+", default=list(config.CERT_X_VALUES))
    p.add_argument("--r", type=int, nargs="+", default=list(config.CERT_R_VALUES))
    verbs.add_parser("bench", parents=[_matrix_options(), out], help="closed form vs Bareiss timing")
    return parser


def _scan_defaults(conjecture):
    if conjecture == "integrality":
        return config.SCAN_N_MAX, config.SCAN_R_MAX
    return config.FIBO_SCAN_N_MAX, config.FIBO_SCAN_R_MAX


def _validate(parser, args):
    needs_matrix = args.verb in ("gen", "inv", "bench") or (args.verb == "verify" and not args.input)
    if needs_matrix:
        if args.family is None or args.n is None:
            parser.error(f"{args.verb} needs --family and --n")
        if args.n < 1:
            parser.error("--n must be >= 1")
        if Family(args.family).needs_r and args.r is None:
            parser.error(f"family {args.family} needs --r")
    if args.verb == "scan":
        n_max, r_max = _scan_defaults(args.conjecture)
        args.n_max = n_max if args.n_max is None else args.n_max
        args.r_max = r_max if args.r_max is None else args.r_max
        if args.n_max < 1 or args.r_max < 1:
            parser.error("--n-max and --r-max must be >= 1")
    if args.verb == "certify" and args.format == "csv":
        parser.error("certify writes JSON only")
    if args.verb in ("verify", "bench") and args.format == "csv":
        parser.error(f"{args.verb} writes JSON only")


def _sign_variant(args):
    return SignVariant(args.sign_variant) if getattr(args, "sign_variant", None) else DEFAULT_SIGN_VARIANT


def _emit_json(out, doc):
    out.write(canonical_dumps(doc) + "\n")


# ─── Verbs ───

def cmd_gen(args, out):
    matrix = hankel_matrix(args.family, args.n, args.r, args.x)
    if args.format == "csv":
        out.write(matrix_csv(matrix))
    else:
        _emit_json(out, matrix_doc(matrix, args.family, args.n, args.r, x=args.x))
    return EXIT_OK


def cmd_inv(args, out):
    variant = _sign_variant(args)
    matrix = inverse_matrix(args.family, args.n, args.r, args.method, variant, args.x)
    if args.format == "csv":
        out.write(matrix_csv(matrix))
    else:
        x = args.x if Family(args.family) is Family.fibpoly else None
        _emit_json(out, matrix_doc(matrix, args.family, args.n, args.r, variant, x=x))
    return EXIT_OK


def cmd_verify(args, out):
    if args.input:
        with open(args.input) as f:
            try:
                fields, matrix = parse_matrix_doc(json.load(f))
            except (ValueError, KeyError, TypeError) as e:
                raise DomainError(f"{args.input} is not a matrix written by inv: {e}") from e
        report = verify_matrix(fields, matrix)
    else:
        report = verify_inverse(MatrixSpec.of(args.family, args.n, args.r, _sign_variant(args)))
    _emit_json(out, verification_doc(report, timing=not args.no_timing))
    return EXIT_OK if report.identity_holds else EXIT_FAILED


def cmd_scan(args, out):
    if args.conjecture == "integrality":
        rows = iter_integrality_scan(args.n_max, args.r_max)
        fields, ok = SCAN_FIELDS, lambda row: row.agrees and row.denominators_divide_r
    else:
        rows = iter_fibonomial_scan(args.n_max, args.r_max, _sign_variant(args))
        fields, ok = FIBO_SCAN_FIELDS, lambda row: row.matches
    failed = False
    if args.format == "csv":
        out.write(",".join(fields) + "\n")
        for row in rows:
            failed |= not ok(row)
            out.write(rows_csv([row], fields).split("\n", 1)[1])
            out.flush()
    else:
        collected = []
        for row in rows:
            failed |= not ok(row)
            collected.append(scan_row_doc(row))
        _emit_json(out, {"conjecture": args.conjecture, "n_max": args.n_max, "r_max": args.r_max,
                         "rows": collected, "all_pass": not failed})
    return EXIT_FAILED if failed else EXIT_OK


def cmd_certify(args, out):
    ids = list(CertificateId) if args.cert == "all" else [CertificateId(args.cert)]
    docs = []
    for cert_id in ids:
        grid = default_grid(cert_id)
        grid = CertGrid(n_max=args.n_max or grid.n_max, r_values=tuple(args.r))
        docs.append(certificate_doc(check_certificate(cert_id, grid, tuple(args.x)), timing=not args.no_timing))
    holds = all(d["holds"] for d in docs)
    _emit_json(out, {"certificates": docs, "holds": holds})
    return EXIT_OK if holds else EXIT_FAILED


def cmd_bench(args, out):
    spec = MatrixSpec.of(args.family, args.n, args.r, _sign_variant(args))
    result = bench(spec, args.x)
    doc = {"family": spec.family.family.value, "n": spec.n, "equal": result.equal,
           "first_difference": list(result.first_difference) if result.first_difference else None}
    if spec.r is not None:
        doc["r"] = spec.r
    if result.x is not None:
        doc["x"] = result.x
    if not args.no_timing:
        doc["closed_ms"] = int(round(result.closed_elapsed * 1000))
        doc["bareiss_ms"] = int(round(result.bareiss_elapsed * 1000))
    _emit_json(out, doc)
    return EXIT_OK if result.equal else EXIT_FAILED


VERBS = {
    "gen": cmd_gen,
    "inv": cmd_inv,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "certify": cmd_certify,
    "bench": cmd_bench,
}


@contextlib.contextmanager
def _open_output(path):
    """stdout, or a buffer written to path once the verb has returned."""
    if path is None:
        yield sys.stdout
        return
    buf = io.StringIO()
    yield buf
    with open(path, "w") as f:
        f.write(buf.getvalue())


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    setup_logging()
    try:
        with _open_output(args.output) as out:
            return VERBS[args.verb](args, out)
    except InternalError as e:
        print(f"filbert {args.verb}: internal check failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (FilbertError, OSError) as e:
        print(f"filbert {args.verb}: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

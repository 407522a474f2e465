import json

import pytest

import config
from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from errors import InternalError
from serialize import canonical_dumps, matrix_doc, parse_matrix_doc


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_fibonacci_json(capsys):
    code, out, _ = _run(capsys, "gen", "--family", "fibonacci", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    assert out == '{"entries":[["1/1","1/1"],["1/1","1/2"]],"family":"fibonacci","n":2}\n'


def test_gen_csv(capsys):
    code, out, _ = _run(capsys, "gen", "--family", "hilbert", "--n", "2", "--format", "csv")
    assert code == EXIT_OK
    assert out == "1/1,1/2\n1/2,1/3\n"


def test_inv_then_verify_printed_sign(capsys, tmp_path):
    path = tmp_path / "inv.json"
    code, _, _ = _run(capsys, "inv", "--family", "d", "--n", "2", "--r", "2", "--method", "closed",
                      "--sign-variant", "printed_k", "--output", str(path))
    assert code == EXIT_OK
    code, out, _ = _run(capsys, "verify", "--input", str(path), "--no-timing")
    assert code == EXIT_FAILED
    report = json.loads(out)
    assert report["identity_holds"] is False
    assert report["oracle_mismatch"] == [1, 2]
    assert report["first_failure"] is not None
    assert "elapsed_ms" not in report


def test_verify_from_flags(capsys):
    code, out, _ = _run(capsys, "verify", "--family", "c", "--n", "4")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["identity_holds"] is True
    assert isinstance(report["elapsed_ms"], int)


def test_poly_inverse_round_trip_and_verify(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, _, _ = _run(capsys, "inv", "--family", "fibpoly", "--n", "3", "-o", str(path))
    assert code == EXIT_OK
    text = path.read_text()
    doc = json.loads(text)
    assert all(isinstance(entry, list) for row in doc["entries"] for entry in row)
    fields, matrix = parse_matrix_doc(doc)
    assert canonical_dumps(matrix_doc(matrix, fields["family"], fields["n"])) + "\n" == text
    code, out, _ = _run(capsys, "verify", "--input", str(path), "--no-timing")
    assert code == EXIT_OK
    assert json.loads(out)["method"] == "cleared"


def test_bareiss_method_matches_closed(capsys):
    _, closed, _ = _run(capsys, "inv", "--family", "b", "--n", "3", "--r", "3")
    _, bareiss, _ = _run(capsys, "inv", "--family", "b", "--n", "3", "--r", "3", "--method", "bareiss")
    assert closed == bareiss


def test_fibpoly_at_a_point(capsys):
    _, closed, _ = _run(capsys, "inv", "--family", "fibpoly", "--n", "3", "--x", "2")
    _, bareiss, _ = _run(capsys, "inv", "--family", "fibpoly", "--n", "3", "--x", "2", "--method", "bareiss")
    assert closed == bareiss
    assert json.loads(closed)["x"] == 2


def test_scan_csv(capsys):
    code, out, _ = _run(capsys, "scan", "--conjecture", "integrality", "--n-max", "4", "--r-max", "3",
                        "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0].startswith("n,r,is_integral,max_denominator")
    assert len(lines) == 13
    assert all(",true," in line for line in lines[1:] if line.split(",")[1] == "1")


def test_scan_json_fibonomial(capsys):
    code, out, _ = _run(capsys, "scan", "--conjecture", "fibonomial", "--n-max", "3", "--r-max", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["all_pass"] is True
    assert len(doc["rows"]) == 3


def test_scan_printed_sign_fails(capsys):
    code, _, _ = _run(capsys, "scan", "--conjecture", "fibonomial", "--n-max", "2", "--r-max", "2",
                      "--sign-variant", "printed_k")
    assert code == EXIT_FAILED


def test_certify(capsys):
    code, out, _ = _run(capsys, "certify", "--cert", "G2", "--n-max", "4", "--x", "1", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["holds"] is True
    assert doc["certificates"][0]["facts"] == {"p(n,1,1)=1": True}


def test_bench(capsys):
    code, out, _ = _run(capsys, "bench", "--family", "fibonacci", "--n", "6", "--no-timing")
    assert code == EXIT_OK
    assert json.loads(out) == {"equal": True, "family": "fibonacci", "first_difference": None, "n": 6}


def test_output_is_deterministic(capsys):
    argv = ("verify", "--family", "b", "--n", "3", "--r", "2", "--no-timing")
    assert _run(capsys, *argv)[1] == _run(capsys, *argv)[1]


@pytest.mark.parametrize("argv", [
    [],
    ["gen", "--family", "fibonacci"],
    ["gen", "--family", "b", "--n", "3"],
    ["gen", "--family", "fibpoly", "--n", "3"],
    ["inv", "--family", "d", "--n", "2", "--r", "1"],
    ["inv", "--family", "hilbert", "--n", "2", "--sign-variant", "printed_k"],
    ["inv", "--family", "fibpoly", "--n", "2", "--format", "csv"],
    ["scan", "--conjecture", "integrality", "--n-max", "0"],
    ["certify", "--format", "csv"],
    ["gen", "--family", "nope", "--n", "2"],
])
def test_usage_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == EXIT_USAGE
    assert "usage:" in err


def test_bad_thread_count_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("FILBERT_THREADS", "-2")
    code, _, _ = _run(capsys, "scan", "--conjecture", "integrality", "--n-max", "2", "--r-max", "2")
    assert code == EXIT_USAGE


def test_scan_grid_defaults_to_config(capsys, monkeypatch):
    monkeypatch.setattr(config, "SCAN_N_MAX", 3)
    monkeypatch.setattr(config, "SCAN_R_MAX", 2)
    code, out, _ = _run(capsys, "scan", "--conjecture", "integrality")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert (doc["n_max"], doc["r_max"]) == (3, 2)
    assert len(doc["rows"]) == 6


def test_fibonomial_scan_default_sign_passes(capsys):
    code, out, _ = _run(capsys, "scan", "--conjecture", "fibonomial", "--n-max", "4", "--r-max", "3")
    assert code == EXIT_OK
    assert all(row["sign_variant"] == "alternating_k" for row in json.loads(out)["rows"])


def test_failed_verb_leaves_no_output_file(capsys, tmp_path):
    path = tmp_path / "v.csv"
    code, _, _ = _run(capsys, "inv", "--family", "fibpoly", "--n", "2", "--format", "csv", "-o", str(path))
    assert code == EXIT_USAGE
    assert not path.exists()


def test_malformed_input_is_a_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    code, _, err = _run(capsys, "verify", "--input", str(path))
    assert code == EXIT_USAGE
    assert "malformed" in err


def test_internal_check_failure_is_not_a_usage_error(capsys, monkeypatch):
    def broken(spec):
        raise InternalError("identity_holds disagrees with first_failure")

    monkeypatch.setattr("cli.verify_inverse", broken)
    code, _, err = _run(capsys, "verify", "--family", "fibonacci", "--n", "3")
    assert code == EXIT_FAILED
    assert "usage:" not in err
    assert "internal check failed" in err


@pytest.mark.slow
def test_bench_filbert_20(capsys):
    code, out, _ = _run(capsys, "bench", "--family", "fibonacci", "--n", "20", "--no-timing")
    assert code == EXIT_OK
    assert json.loads(out)["equal"] is True

"""End-to-end tests for the command-line entrypoint."""

import json
from pathlib import Path

import pandas as pd
import pytest

EXAMPLE_A = Path("data/examples/example_a.poly")


@pytest.fixture
def main():
    from scripts.run_quadkit import main

    return main


def test_quadratize_writes_qubo_and_report(main, tmp_path):
    """quadratize writes a verified QUBO, both reports and the manifest."""
    assert main(["quadratize", "--input", str(EXAMPLE_A), "--output", str(tmp_path)]) == 0
    assert (tmp_path / "example_a.qubo").read_text().startswith("8 2 ")
    report = json.loads((tmp_path / "example_a.report.json").read_text())
    assert report["verified"] is True
    assert report["m"] == 2
    assert "group.2.lemma = L2" in (tmp_path / "example_a.report.txt").read_text()
    assert (tmp_path / "manifest.json").exists()


def test_quadratize_poly_format(main, tmp_path):
    """--format poly writes the quadratic as a polynomial file."""
    args = ["quadratize", "--input", str(EXAMPLE_A), "--output", str(tmp_path),
            "--method", "rosenberg", "--format", "poly"]
    assert main(args) == 0
    assert (tmp_path / "example_a.quad.poly").exists()
    assert not (tmp_path / "example_a.qubo").exists()


def test_verify_accepts_written_qubo(main, tmp_path, capsys):
    """verify confirms a QUBO produced by quadratize."""
    main(["quadratize", "--input", str(EXAMPLE_A), "--output", str(tmp_path)])
    capsys.readouterr()
    qubo = tmp_path / "example_a.qubo"
    args = ["verify", "--input", str(EXAMPLE_A), "--qubo", str(qubo), "--output", str(tmp_path)]
    assert main(args) == 0
    assert '"ok": true' in capsys.readouterr().out


def test_verify_rejects_corrupted_qubo(main, tmp_path, capsys):
    """A perturbed coefficient fails verification with exit code 1."""
    main(["quadratize", "--input", str(EXAMPLE_A), "--output", str(tmp_path)])
    qubo = tmp_path / "example_a.qubo"
    lines = qubo.read_text().splitlines()
    i, j, coeff = lines[1].split()
    lines[1] = f"{i} {j} {float(coeff) + 1}"
    qubo.write_text("\n".join(lines) + "\n")
    capsys.readouterr()

    args = ["verify", "--input", str(EXAMPLE_A), "--qubo", str(qubo), "--output", str(tmp_path)]
    assert main(args) == 1
    err = capsys.readouterr().err
    assert "✗ verify failed" in err
    assert json.loads(err.strip().splitlines()[-1])["error"] == "VerificationFailedError"


def test_compare_writes_table(main, tmp_path):
    """compare writes one CSV row per method."""
    assert main(["compare", "--input", str(EXAMPLE_A), "--output", str(tmp_path)]) == 0
    table = pd.read_csv(tmp_path / "example_a.compare.csv")
    assert list(table["method"]) == ["theorem1", "rosenberg", "termwise"]


def test_truth2poly(main, tmp_path):
    """truth2poly turns a value list into a polynomial file."""
    source = tmp_path / "and.tt"
    source.write_text("0\n0\n0\n1\n")
    out = tmp_path / "out"
    assert main(["truth2poly", "--input", str(source), "--output", str(out)]) == 0
    assert (out / "and.poly").read_text() == "1.0 : 1 2\n"


def test_invalid_tolerance_exit_code(main, tmp_path):
    """A non-positive tolerance is a usage error."""
    args = ["quadratize", "--input", str(EXAMPLE_A), "--output", str(tmp_path), "--tolerance", "0"]
    assert main(args) == 2


def test_missing_input_flag(main, tmp_path):
    """File commands need --input."""
    assert main(["compare", "--output", str(tmp_path)]) == 2


def test_missing_input_file(main, tmp_path):
    """A nonexistent input file exits with 2."""
    args = ["quadratize", "--input", str(tmp_path / "absent.poly"), "--output", str(tmp_path)]
    assert main(args) == 2


def test_parse_error_exit_code(main, tmp_path, capsys):
    """Malformed input reports the line and exits with 2."""
    source = tmp_path / "bad.poly"
    source.write_text("1 : 1 2\n1 : 1 1\n")
    assert main(["quadratize", "--input", str(source), "--output", str(tmp_path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_degree_five_exit_code(main, tmp_path):
    """Degree above four is rejected with exit code 2."""
    source = tmp_path / "quintic.poly"
    source.write_text("1 : 1 2 3 4 5\n")
    assert main(["quadratize", "--input", str(source), "--output", str(tmp_path)]) == 2


def test_reproduce(main, tmp_path):
    """reproduce passes every configured check."""
    assert main(["reproduce", "--output", str(tmp_path)]) == 0
    table = pd.read_csv(tmp_path / "reproduce.csv")
    assert table["passed"].all()

"""Tests for output generation."""

import json

import pandas as pd
import pytest

from src.baselines import metrics
from src.fixtures import example_a, example_d
from src.loader import parse_polynomial, read_qubo
from src.oracle import verify_perfect
from src.outputs import (
    atomic_write_text,
    format_metrics_table,
    format_polynomial,
    format_qubo,
    format_report,
    report_fields,
    write_manifest,
)
from src.partition import quadratize_n
from src.quad4 import Quadratization


@pytest.fixture(scope="module")
def quadratized_a():
    """Example A and its grouped quadratization."""
    p = example_a()
    return p, quadratize_n(p, threads=1)


def test_polynomial_text_parses_back_exactly():
    """Formatting then parsing a polynomial with awkward floats is lossless."""
    p = example_d() * 0.1
    assert parse_polynomial(format_polynomial(p)) == p


def test_polynomial_text_is_one_based():
    """Files number variables from 1."""
    assert format_polynomial(example_a()).splitlines()[0] == "1.0 : 1 8"


def test_qubo_round_trip_verifies(quadratized_a):
    """A written QUBO reads back to a perfect quadratization of the input."""
    p, q = quadratized_a
    model = read_qubo(format_qubo(q, n=8))
    assert (model.n, model.m) == (8, 2)
    assert model.polynomial.is_close(q.quadratic)
    assert verify_perfect(p, model.polynomial, model.aux_vars).ok


def test_qubo_layout(quadratized_a):
    """Header first, entries sorted with i <= j."""
    _, q = quadratized_a
    lines = format_qubo(q, n=8).splitlines()
    assert lines[0] == "8 2 0"
    entries = [tuple(int(tok) for tok in line.split()[:2]) for line in lines[1:]]
    assert entries == sorted(entries)
    assert all(i <= j for i, j in entries)
    assert (9, 9) in entries and (10, 10) in entries


def test_qubo_is_deterministic(quadratized_a):
    """Same quadratization, same bytes."""
    p, q = quadratized_a
    assert format_qubo(q, n=8) == format_qubo(quadratize_n(p, threads=2), n=8)


def test_qubo_renumbers_sparse_aux():
    """Auxiliaries are packed right after the originals."""
    q = Quadratization(parse_polynomial("1 : 1 12\n-2 : 12\n"), [11], [])
    assert format_qubo(q, n=3) == "3 1 0\n1 4 1\n4 4 -2\n"


def test_qubo_rejects_original_outside_n(quadratized_a):
    """Every original variable must fit in n."""
    _, q = quadratized_a
    with pytest.raises(ValueError):
        format_qubo(q, n=4)


def test_report_fields(quadratized_a):
    """Report carries the metrics and one block of keys per group."""
    p, q = quadratized_a
    fields = report_fields(q, metrics(q, p), "theorem1", n=8)
    assert fields["m"] == 2
    assert fields["group_quadratic_terms"] == 14
    assert fields["group.1.support"] == "1 2 3 4"
    assert fields["group.1.lemma"] == "L1"
    assert fields["group.2.aux"] == 10
    assert fields["group.2.lemma"] == "L2"
    assert fields["group.2.flips"] == ""
    assert fields["group.1.permutation"] == "1 2 3 4"
    assert sorted(fields["group.2.permutation"].split()) == ["1", "2", "3", "4"]
    assert "group.3.support" not in fields


def test_format_report_lines():
    """One ``key = value`` line per field."""
    assert format_report({"method": "termwise", "m": 3}) == "method = termwise\nm = 3\n"


def test_metrics_table_rounding():
    """Printed tables use the configured number of decimals."""
    df = pd.DataFrame([{"method": "rosenberg", "coeff_min": -10.5812}])
    assert "-10.58" in format_metrics_table(df, decimals=2)


def test_atomic_write_leaves_no_temp_files(tmp_path):
    """The target appears whole and no temporary file is left behind."""
    target = tmp_path / "nested" / "out.txt"
    atomic_write_text(target, "first\n")
    atomic_write_text(target, "second\n")
    assert target.read_text() == "second\n"
    assert [f.name for f in target.parent.iterdir()] == ["out.txt"]


def test_manifest(tmp_path):
    """Manifest records hashes, versions and the command."""
    source = tmp_path / "in.poly"
    source.write_text("1 : 1 2 3\n")
    write_manifest(None, source, "quadratize", 0, tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["config_hash"] is None
    assert len(manifest["input_hash"]) == 64
    assert manifest["command"] == "quadratize"
    assert set(manifest["library_versions"]) == {"numpy", "pandas", "pydantic", "pyyaml"}

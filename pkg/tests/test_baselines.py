"""Tests for the pair-substitution and term-by-term baselines and their metrics."""

import itertools

import pandas as pd
import pytest

from src.baselines import compare, metrics, monomial_gadget, rosenberg, rosenberg_penalty, termwise
from src.errors import DegreeExceededError, UnreachableDegreeError
from src.fixtures import (
    ROSENBERG_PAIRS,
    example_a,
    example_b,
    example_c,
    example_d,
    example_e,
    printed_c,
    printed_d_pairwise,
)
from src.oracle import verify_perfect
from src.partition import quadratize_n
from src.polynomial import Polynomial, evaluate, monomial


def test_penalty_is_zero_only_on_product():
    """The pair penalty vanishes iff b_a = b_i b_j and is at least the weight otherwise."""
    penalty = rosenberg_penalty(0, 1, 2, weight=4.0)
    for bi, bj, ba in itertools.product((0, 1), repeat=3):
        value = evaluate(penalty, [bi, bj, ba])
        if ba == bi * bj:
            assert value == 0.0
        else:
            assert value >= 4.0


def test_rosenberg_example_a_penalties():
    """Published pairs on A give weights 3, 6, 6, 10."""
    q = rosenberg(example_a(), pairs=ROSENBERG_PAIRS["A"])
    assert q.aux_vars == [8, 9, 10, 11]
    assert [r.penalty for r in q.provenance] == [3, 6, 6, 10]
    m = metrics(q, example_a())
    assert (m.coeff_min, m.coeff_max) == (-20, 30)
    assert verify_perfect(example_a(), q.quadratic, q.aux_vars).ok


def test_rosenberg_greedy_on_example_a():
    """Greedy pair choice finds the published pairs on A."""
    q = rosenberg(example_a())
    assert [r.support for r in q.provenance] == ROSENBERG_PAIRS["A"]
    assert [r.penalty for r in q.provenance] == [3, 6, 6, 10]


def test_rosenberg_example_c_penalties():
    """Published pairs on C give weights 21, 8, 6, 8."""
    q = rosenberg(example_c(), pairs=ROSENBERG_PAIRS["C"])
    assert [r.penalty for r in q.provenance] == [21, 8, 6, 8]
    m = metrics(q, example_c())
    assert (m.coeff_min, m.coeff_max) == (-42, 63)
    assert verify_perfect(example_c(), q.quadratic, q.aux_vars).ok


def test_rosenberg_example_e_penalties():
    """Real-valued weights on E follow the magnitudes of the substituted terms."""
    q = rosenberg(example_e(), pairs=ROSENBERG_PAIRS["E"])
    assert [r.penalty for r in q.provenance] == pytest.approx([1.2362, 5.2906], abs=1e-3)
    m = metrics(q, example_e())
    assert m.coeff_min == pytest.approx(-10.58, abs=0.05)
    assert m.coeff_max == pytest.approx(15.87, abs=0.05)
    assert verify_perfect(example_e(), q.quadratic, q.aux_vars).ok


def test_rosenberg_unreachable_pairs():
    """Pairs that leave a cubic term behind are rejected."""
    with pytest.raises(UnreachableDegreeError):
        rosenberg(example_a(), pairs=[(0, 1)])


def test_rosenberg_skips_unused_pair():
    """A pair that no remaining term contains costs no auxiliary."""
    p = monomial(1, (0, 1, 2))
    q = rosenberg(p, pairs=[(3, 4), (0, 1)])
    assert q.aux_vars == [3]
    assert verify_perfect(p, q.quadratic, q.aux_vars).ok


def test_rosenberg_rejects_degree_five():
    """Degree above four is out of range."""
    with pytest.raises(DegreeExceededError):
        rosenberg(monomial(1, (0, 1, 2, 3, 4)))


def test_negative_cubic_gadget():
    """-b1b2b3 becomes b_a(2 - b1 - b2 - b3)."""
    gadget = monomial_gadget(-1.0, (0, 1, 2), aux=3)
    assert gadget == Polynomial({(3,): 2.0, (0, 3): -1.0, (1, 3): -1.0, (2, 3): -1.0})


def test_positive_cubic_gadget():
    """b1b2b3 becomes the pair sum plus b_a(1 - b1 - b2 - b3)."""
    gadget = monomial_gadget(1.0, (0, 1, 2), aux=3)
    expected = Polynomial({
        (0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0,
        (3,): 1.0, (0, 3): -1.0, (1, 3): -1.0, (2, 3): -1.0,
    })
    assert gadget == expected


@pytest.mark.parametrize("coeff", [3.0, -2.5])
def test_quartic_gadget_verifies(coeff):
    """Single quartic monomials of either sign get a perfect gadget."""
    f = monomial(coeff, (1, 4, 6, 7))
    assert verify_perfect(f, monomial_gadget(coeff, (1, 4, 6, 7), aux=9), [9]).ok


def test_termwise_chain():
    """Term-by-term needs two auxiliaries per chain block."""
    p = example_b(3)
    q = termwise(p)
    assert len(q.aux_vars) == 6
    assert verify_perfect(p, q.quadratic, q.aux_vars).ok


def test_termwise_quadratic_input():
    """Quadratic input needs no auxiliary."""
    p = Polynomial({(0, 1): -1.0, (1,): 2.0})
    q = termwise(p)
    assert q.aux_vars == []
    assert q.quadratic == p


def test_metrics_example_a():
    """Grouped output on A: 14 new quadratic terms, range -13..31."""
    q = quadratize_n(example_a(), threads=1)
    m = metrics(q, example_a())
    assert m.aux_count == 2
    assert m.group_quadratic_terms == 14
    assert (m.coeff_min, m.coeff_max) == (-13, 31)


def test_metrics_published_c():
    """The published C quadratic has 27 per-group terms and range -7..10."""
    m = metrics(printed_c(), example_c())
    assert m.aux_count == 3
    assert m.group_quadratic_terms == 27
    assert (m.coeff_min, m.coeff_max) == (-7, 10)


def test_metrics_published_d_pairwise():
    """The published pairwise cover of D: 5 aux, 31 terms, range -42..63."""
    m = metrics(printed_d_pairwise(), example_d())
    assert m.aux_count == 5
    assert m.group_quadratic_terms == 31
    assert (m.coeff_min, m.coeff_max) == (-42, 63)


def test_compare_example_a():
    """One row per method; termwise has too many auxiliaries to enumerate."""
    df = compare(example_a())
    assert list(df["method"]) == ["theorem1", "rosenberg", "termwise"]
    assert list(df["aux_count"]) == [2, 4, 10]
    rows = df.set_index("method")
    assert rows.loc["theorem1", "verified"]
    assert rows.loc["rosenberg", "verified"]
    assert pd.isna(rows.loc["termwise", "verified"])

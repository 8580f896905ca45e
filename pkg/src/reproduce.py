"""Check the built-in examples against the figures in the settings file."""

from dataclasses import asdict, dataclass

import pandas as pd

from src.baselines import metrics, rosenberg, termwise
from src.errors import BudgetExceededError
from src.fixtures import (
    EXAMPLES,
    PRINTED,
    PRINTED_E_MAGNITUDES,
    ROSENBERG_PAIRS,
    example_b,
    example_e,
    printed_d_pairwise,
)
from src.oracle import synthesize_one_aux, verify_perfect
from src.partition import quadratize_n
from src.polynomial import Polynomial, degree_split
from src.quad4 import Quadratization, coeffs4_of, lemma1
from src.schema import ExpectedExample, QuadkitConfig


@dataclass
class CheckResult:
    """One reproduced figure."""

    example: str
    check: str
    expected: object
    actual: object
    passed: bool


class _Checks:
    def __init__(self, example: str):
        self.example = example
        self.rows: list[CheckResult] = []

    def equal(self, check: str, expected, actual) -> None:
        self.rows.append(CheckResult(self.example, check, expected, actual, expected == actual))

    def close(self, check: str, expected: float, actual: float, tol: float) -> None:
        passed = abs(expected - actual) <= tol
        self.rows.append(CheckResult(self.example, check, expected, round(actual, 6), passed))

    def true(self, check: str, actual: bool) -> None:
        self.rows.append(CheckResult(self.example, check, True, actual, bool(actual)))


def _verified(f: Polynomial, q: Quadratization, config: QuadkitConfig) -> bool | None:
    tol = config.tolerances
    try:
        return verify_perfect(
            f, q.quadratic, q.aux_vars, tol=tol.absolute, tol_rel=tol.relative,
            budget_log2=config.budget_log2,
        ).ok
    except BudgetExceededError:
        return None


def _synthesized(f: Polynomial, config: QuadkitConfig) -> bool:
    tol = config.tolerances
    q = synthesize_one_aux(f, tol=tol.absolute, tol_rel=tol.relative, pivot=tol.singular_pivot)
    # a returned quadratic has already passed the exhaustive check
    return q is not None


def example_e_lemma1() -> Quadratization:
    """Example E quadratized by the L1 gadget on its natural variable order."""
    e = example_e()
    low, high = degree_split(e)
    gadget = lemma1(coeffs4_of(high, (0, 1, 2, 3)))
    return Quadratization(low + gadget, [4])


def _check_ranges(
    checks: _Checks, label: str, q: Quadratization, f: Polynomial, expected: ExpectedExample
) -> None:
    m = metrics(q, f)
    if expected.group_quadratic_terms is not None:
        checks.equal(f"{label} group quadratic terms", expected.group_quadratic_terms,
                     m.group_quadratic_terms)
    if expected.coeff_range is not None:
        lo, hi = (
            (m.group_coeff_min, m.group_coeff_max)
            if expected.range_kind == "per_group"
            else (m.coeff_min, m.coeff_max)
        )
        checks.close(
            f"{label} coefficient min", expected.coeff_range[0], lo, expected.range_tolerance
        )
        checks.close(
            f"{label} coefficient max", expected.coeff_range[1], hi, expected.range_tolerance
        )


def _check_example(
    example: str, expected: ExpectedExample, config: QuadkitConfig
) -> list[CheckResult]:
    checks = _Checks(example)
    f = EXAMPLES[example]()
    tol = config.tolerances.absolute

    q = quadratize_n(f, tol=tol)
    if expected.aux_count is not None:
        checks.equal("theorem1 aux", expected.aux_count, len(q.aux_vars))
    checks.true("theorem1 verified", _verified(f, q, config))

    if expected.metrics_of == "printed":
        printed = PRINTED[example]()
        checks.true("printed verified", _verified(f, printed, config))
        _check_ranges(checks, "printed", printed, f, expected)
        if expected.computed_range is not None:
            m = metrics(q, f)
            lo, hi = expected.computed_range
            checks.close("theorem1 coefficient min", lo, m.coeff_min, expected.range_tolerance)
            checks.close("theorem1 coefficient max", hi, m.coeff_max, expected.range_tolerance)
    else:
        _check_ranges(checks, "theorem1", q, f, expected)
        if example in PRINTED:
            same = q.quadratic.is_close(PRINTED[example]().quadratic, tol)
            checks.true("theorem1 equals printed", same)

    if len(f.variables) <= 4:
        checks.true("synthesizer verified", _synthesized(f, config))

    if expected.printed_magnitude_tolerance is not None:
        q_e = example_e_lemma1()
        checks.true("L1 quadratic verified", _verified(f, q_e, config))
        for support, magnitude in PRINTED_E_MAGNITUDES.items():
            checks.close(f"|coefficient {support}|", magnitude,
                         abs(q_e.quadratic.coefficient(support)),
                         expected.printed_magnitude_tolerance)

    if expected.baseline_aux is not None:
        if example == "D":
            baseline = printed_d_pairwise()
        else:
            baseline = rosenberg(f, pairs=ROSENBERG_PAIRS.get(example), tol=tol)
        m = metrics(baseline, f)
        checks.equal("baseline aux", expected.baseline_aux, m.aux_count)
        checks.true("baseline verified", _verified(f, baseline, config))
        if expected.baseline_penalties:
            penalties = [r.penalty for r in baseline.provenance]
            checks.equal("baseline penalties", list(expected.baseline_penalties), penalties)
        if expected.baseline_quadratic_terms is not None:
            checks.equal("baseline quadratic terms", expected.baseline_quadratic_terms,
                         m.group_quadratic_terms)
        if expected.baseline_range is not None:
            checks.close("baseline coefficient min", expected.baseline_range[0], m.coeff_min,
                         expected.range_tolerance)
            checks.close("baseline coefficient max", expected.baseline_range[1], m.coeff_max,
                         expected.range_tolerance)
    return checks.rows


def _check_chain(config: QuadkitConfig) -> list[CheckResult]:
    checks = _Checks("B")
    tol = config.tolerances.absolute
    for n_blocks in config.chain_lengths:
        f = example_b(n_blocks)
        q = quadratize_n(f, tol=tol)
        checks.equal(f"N={n_blocks} theorem1 aux", n_blocks, len(q.aux_vars))
        checks.equal(f"N={n_blocks} termwise aux", 2 * n_blocks, len(termwise(f, tol=tol).aux_vars))
        verified = _verified(f, q, config)
        if verified is not None:
            checks.true(f"N={n_blocks} theorem1 verified", verified)
    return checks.rows


def reproduce(config: QuadkitConfig) -> pd.DataFrame:
    """One row per reproduced figure: example, check, expected, actual, passed."""
    rows: list[CheckResult] = []
    for example, expected in sorted(config.expected.items()):
        if example == "B":
            rows.extend(_check_chain(config))
        else:
            rows.extend(_check_example(example, expected, config))
    return pd.DataFrame([asdict(r) for r in rows])

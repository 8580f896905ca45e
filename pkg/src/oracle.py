"""Ground-truth checks: exhaustive verification and a one-auxiliary synthesizer.

Neither routine uses the lemma gadgets, so they can confirm them independently.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING

import numpy as np

from src.errors import BudgetExceededError, DegreeExceededError
from src.polynomial import DEFAULT_TOLERANCE, Polynomial, tabulate

if TYPE_CHECKING:
    from src.quad4 import Quadratization

DEFAULT_BUDGET_LOG2 = 28
MAX_ORIGINAL_VARS = 20
MAX_AUX_VARS = 8
SINGULAR_PIVOT = 1e-10
PATTERN_CHUNK = 4096


@dataclass
class VerificationReport:
    """Outcome of an exhaustive perfect-quadratization check."""

    ok: bool
    worst_gap: float
    witness: dict[int, int] = field(default_factory=dict)
    assignments_checked: int = 0


def allowed_gap(values: np.ndarray, tol_abs: float, tol_rel: float) -> np.ndarray:
    """Per-assignment tolerance ``tol_abs + tol_rel * |f(x)|``."""
    return tol_abs + tol_rel * np.abs(values)


def _split_variables(
    f: Polynomial, q: Polynomial, aux: Iterable[int]
) -> tuple[list[int], list[int]]:
    aux_vars = sorted(set(aux))
    aux_set = set(aux_vars)
    originals = sorted((set(f.variables) | set(q.variables)) - aux_set)
    if aux_set & set(f.variables):
        raise ValueError("auxiliary variables must not occur in the original function")
    return originals, aux_vars


def _check_budget(n: int, m: int, budget_log2: int) -> None:
    if n > MAX_ORIGINAL_VARS or m > MAX_AUX_VARS or n + m > budget_log2:
        raise BudgetExceededError(
            f"enumeration of 2^{n + m} assignments ({n} original, {m} auxiliary) "
            f"exceeds budget 2^{budget_log2}"
        )


def _aux_slices(q: Polynomial, originals: Sequence[int], aux_vars: Sequence[int]):
    """Yield the table of q over ``originals`` for every auxiliary assignment."""
    for word in range(1 << len(aux_vars)):
        fixed = {a: (word >> j) & 1 for j, a in enumerate(aux_vars)}
        yield tabulate(q.restrict(fixed), originals)


def verify_perfect(
    f: Polynomial,
    q: Polynomial,
    aux: Iterable[int],
    tol: float = DEFAULT_TOLERANCE,
    tol_rel: float = DEFAULT_TOLERANCE,
    budget_log2: int = DEFAULT_BUDGET_LOG2,
) -> VerificationReport:
    """Check ``min over aux of q(x, aux) == f(x)`` on every original assignment.

    Raises:
        BudgetExceededError: If 2^(n+m) exceeds ``2^budget_log2``
    """
    originals, aux_vars = _split_variables(f, q, aux)
    _check_budget(len(originals), len(aux_vars), budget_log2)

    f_values = tabulate(f, originals)
    best = np.full_like(f_values, np.inf)
    for values in _aux_slices(q, originals, aux_vars):
        np.minimum(best, values, out=best)

    gap = np.abs(best - f_values)
    within = gap <= allowed_gap(f_values, tol, tol_rel)
    worst = int(np.argmax(gap))
    witness = {v: (worst >> j) & 1 for j, v in enumerate(originals)}
    return VerificationReport(
        ok=bool(within.all()),
        worst_gap=float(gap[worst]),
        witness=witness,
        assignments_checked=len(f_values) << len(aux_vars),
    )


def verify_quadratization(
    f: Polynomial, q: "Quadratization", budget_log2: int = DEFAULT_BUDGET_LOG2
) -> VerificationReport:
    """``verify_perfect`` using the auxiliaries and tolerance recorded on ``q``."""
    return verify_perfect(
        f, q.quadratic, q.aux_vars, tol=q.tolerance, tol_rel=q.tolerance, budget_log2=budget_log2
    )


def one_sided(
    f: Polynomial,
    q: Polynomial,
    aux: Iterable[int],
    tol: float = DEFAULT_TOLERANCE,
    tol_rel: float = DEFAULT_TOLERANCE,
    budget_log2: int = DEFAULT_BUDGET_LOG2,
) -> bool:
    """True if no auxiliary assignment drives q below f."""
    originals, aux_vars = _split_variables(f, q, aux)
    _check_budget(len(originals), len(aux_vars), budget_log2)
    f_values = tabulate(f, originals)
    floor = f_values - allowed_gap(f_values, tol, tol_rel)
    return all(bool((values >= floor).all()) for values in _aux_slices(q, originals, aux_vars))


# Feature layout of a general quadratic in 4 originals (0..3) and one aux (4):
# constant, 5 linear terms, 6 original pairs, 4 original-aux pairs.
_AUX = 4
_FEATURES: list[tuple[int, ...]] = (
    [()]
    + [(v,) for v in range(5)]
    + list(combinations(range(4), 2))
    + [(v, _AUX) for v in range(4)]
)


def _feature_rows(aux_value: int) -> np.ndarray:
    rows = np.zeros((16, len(_FEATURES)))
    for x in range(16):
        bits = [(x >> j) & 1 for j in range(4)] + [aux_value]
        for k, feature in enumerate(_FEATURES):
            rows[x, k] = float(all(bits[v] for v in feature))
    return rows


_ROWS_AUX0 = _feature_rows(0)
_ROWS_AUX1 = _feature_rows(1)


def synthesize_one_aux(
    f: Polynomial,
    aux: int | None = None,
    tol: float = DEFAULT_TOLERANCE,
    tol_rel: float = DEFAULT_TOLERANCE,
    pivot: float = SINGULAR_PIVOT,
) -> Polynomial | None:
    """Find a perfect one-auxiliary quadratization of a function of <= 4 variables.

    Every "tight pattern" s (which assignments the auxiliary is 1 at, in the
    minimum) fixes 16 linear equations q(x, s(x)) = f(x) in the 16 unknown
    coefficients. Patterns are tried in increasing 16-bit word order; singular
    systems are skipped, and a solution is accepted when the other auxiliary
    value never undershoots f. Returns None if no pattern works.
    """
    variables = list(f.variables)
    if len(variables) > 4:
        raise DegreeExceededError(f"synthesizer handles at most 4 variables, got {len(variables)}")
    if aux is None:
        aux = max(variables, default=-1) + 1
    if aux in variables:
        raise ValueError(f"auxiliary variable {aux} already occurs in f")
    if f.degree <= 2:
        # the all-zero pattern: the auxiliary is never needed
        return f

    # pad with placeholder locals that f does not depend on; they are fixed to 0 at the end
    local = {v: j for j, v in enumerate(variables)}
    f_values = tabulate(f.relabel(local), list(range(4)))
    floor = f_values - allowed_gap(f_values, tol, tol_rel)

    shifts = np.arange(16, dtype=np.int64)
    for start in range(0, 1 << 16, PATTERN_CHUNK):
        words = np.arange(start, start + PATTERN_CHUNK, dtype=np.int64)
        active = ((words[:, None] >> shifts) & 1).astype(bool)
        tight = np.where(active[:, :, None], _ROWS_AUX1[None], _ROWS_AUX0[None])
        solvable = np.abs(np.linalg.det(tight)) > pivot
        if not solvable.any():
            continue
        candidates = np.flatnonzero(solvable)
        solutions = np.linalg.solve(
            tight[candidates], np.broadcast_to(f_values, (len(candidates), 16))[..., None]
        )[..., 0]
        other = np.where(active[candidates][:, :, None], _ROWS_AUX0[None], _ROWS_AUX1[None])
        other_values = np.einsum("kij,kj->ki", other, solutions)
        tight_values = np.einsum("kij,kj->ki", tight[candidates], solutions)
        accepted = (other_values >= floor).all(axis=1) & (
            np.abs(tight_values - f_values) <= allowed_gap(f_values, tol, tol_rel)
        ).all(axis=1)
        for k in np.flatnonzero(accepted):
            q = _solution_to_polynomial(solutions[int(k)], variables, aux)
            if verify_perfect(f, q, [aux], tol=tol, tol_rel=tol_rel).ok:
                return q
    return None


def _solution_to_polynomial(
    solution: np.ndarray, variables: Sequence[int], aux: int
) -> Polynomial:
    base = max([*variables, aux]) + 1
    back = {j: base + j for j in range(4)}
    back.update({j: v for j, v in enumerate(variables)})
    back[_AUX] = aux
    q = Polynomial(
        {tuple(back[v] for v in feature): coeff for feature, coeff in zip(_FEATURES, solution)}
    )
    return q.restrict({base + j: 0 for j in range(len(variables), 4)})

"""Earlier quadratization methods and the metrics used to compare against them."""

from collections import Counter
from dataclasses import asdict, dataclass
from itertools import combinations

import pandas as pd

from src.errors import BudgetExceededError, DegreeExceededError, UnreachableDegreeError
from src.oracle import verify_perfect
from src.polynomial import DEFAULT_TOLERANCE, Monomial, Polynomial, degree_split
from src.quad4 import AUX_LOCAL, Coeffs4, ProvenanceRecord, Quadratization, lemma1, lemma2


@dataclass
class ComparisonMetrics:
    """Size and conditioning of a quadratization."""

    aux_count: int
    new_quadratic_terms: int
    group_quadratic_terms: int
    coeff_min: float
    coeff_max: float
    group_coeff_min: float
    group_coeff_max: float


def _check_degree(p: Polynomial) -> None:
    if p.degree > 4:
        raise DegreeExceededError(f"degree {p.degree} exceeds 4")


def rosenberg_penalty(i: int, j: int, aux: int, weight: float) -> Polynomial:
    """weight * (b_i b_j - 2 b_i b_a - 2 b_j b_a + 3 b_a); zero iff b_a = b_i b_j."""
    return Polynomial(
        {(i, j): weight, (i, aux): -2 * weight, (j, aux): -2 * weight, (aux,): 3 * weight}
    )


def _super_terms(terms: dict[Monomial, float]) -> list[Monomial]:
    return [mon for mon in terms if len(mon) >= 3]


def _greedy_pair(terms: dict[Monomial, float]) -> tuple[int, int]:
    counts: Counter[tuple[int, int]] = Counter()
    for mon in _super_terms(terms):
        counts.update(combinations(mon, 2))
    return min(counts, key=lambda pair: (-counts[pair], pair))


def rosenberg(
    p: Polynomial,
    pairs: list[tuple[int, int]] | None = None,
    tol: float = DEFAULT_TOLERANCE,
) -> Quadratization:
    """Substitute products of variable pairs by auxiliaries until quadratic.

    Each substituted pair gets the penalty weight M = sum of |coefficients| of
    the super-quadratic terms containing the pair at substitution time. Without
    explicit ``pairs`` the pair occurring in most remaining super-quadratic
    terms is taken (ties: smallest pair).

    Raises:
        DegreeExceededError: If p has degree above 4
        UnreachableDegreeError: If the given pairs leave a term of degree >= 3
    """
    _check_degree(p)
    terms: dict[Monomial, float] = dict(p.items())
    next_aux = max(p.variables, default=-1) + 1
    aux_vars: list[int] = []
    penalties: list[ProvenanceRecord] = []

    def substitute(i: int, j: int) -> None:
        nonlocal next_aux
        containing = [mon for mon in _super_terms(terms) if i in mon and j in mon]
        if not containing:
            return
        aux = next_aux
        next_aux += 1
        weight = sum(abs(terms[mon]) for mon in containing)
        for mon in containing:
            coeff = terms.pop(mon)
            reduced = tuple(sorted((set(mon) - {i, j}) | {aux}))
            terms[reduced] = terms.get(reduced, 0.0) + coeff
        aux_vars.append(aux)
        penalties.append(ProvenanceRecord(
            (i, j), "rosenberg", aux=aux,
            gadget=rosenberg_penalty(i, j, aux, weight), penalty=weight,
        ))

    if pairs is not None:
        for i, j in pairs:
            substitute(i, j)
        if _super_terms(terms):
            raise UnreachableDegreeError(
                f"pairs {pairs} leave super-quadratic terms {_super_terms(terms)}"
            )
    while _super_terms(terms):
        substitute(*_greedy_pair(terms))

    quadratic = Polynomial(terms, epsilon=p.epsilon) + sum(
        (r.gadget for r in penalties), Polynomial()
    )
    return Quadratization(quadratic, aux_vars, penalties, tol)


def monomial_gadget(coeff: float, support: tuple[int, ...], aux: int) -> Polynomial:
    """One-auxiliary gadget for a single cubic or quartic monomial.

    Negative monomials use the all-non-positive gadget, positive ones the
    L1 gadget with a single non-zero coefficient.
    """
    if len(support) == 4:
        coeffs = Coeffs4(coeff, (0.0, 0.0, 0.0, 0.0))
    elif len(support) == 3:
        # the monomial is the triple leaving out local variable 3
        coeffs = Coeffs4(0.0, (0.0, 0.0, 0.0, coeff))
    else:
        raise DegreeExceededError(f"monomial gadgets need degree 3 or 4, got {len(support)}")
    gadget = lemma2(coeffs, check=False) if coeff < 0 else lemma1(coeffs, check=False)
    mapping = {k: v for k, v in enumerate(support)}
    mapping[AUX_LOCAL] = aux
    return gadget.relabel(mapping)


def termwise(p: Polynomial, tol: float = DEFAULT_TOLERANCE) -> Quadratization:
    """One auxiliary per super-quadratic term."""
    _check_degree(p)
    low, high = degree_split(p)
    next_aux = max(p.variables, default=-1) + 1
    quadratic = low
    aux_vars: list[int] = []
    records: list[ProvenanceRecord] = []
    for k, (mon, coeff) in enumerate(high.items()):
        aux = next_aux + k
        gadget = monomial_gadget(coeff, mon, aux)
        quadratic = quadratic + gadget
        aux_vars.append(aux)
        records.append(ProvenanceRecord(mon, "termwise", aux=aux, gadget=gadget))
    return Quadratization(quadratic, aux_vars, records, tol)


def _quadratic_monomials(p: Polynomial) -> set[Monomial]:
    return {mon for mon, _ in p.items() if len(mon) == 2}


def metrics(q: Quadratization, original: Polynomial) -> ComparisonMetrics:
    """Auxiliary count, new quadratic terms and coefficient range of ``q``.

    ``new_quadratic_terms`` counts degree-2 monomials of the merged output that
    the input did not already have; ``group_quadratic_terms`` counts them per
    gadget before merging (plus whatever is left outside the gadgets). The
    ``group_coeff_*`` pair is the coefficient range over those same unmerged
    pieces.
    """
    existing = _quadratic_monomials(original)
    merged = q.quadratic
    pieces = [r.gadget for r in q.provenance if r.gadget is not None]
    remainder = merged - sum(pieces, Polynomial())
    if remainder:
        pieces.append(remainder)
    per_gadget = sum(len(_quadratic_monomials(g) - existing) for g in pieces)
    coeffs = [c for _, c in merged.items()]
    piece_coeffs = [c for g in pieces for _, c in g.items()]
    return ComparisonMetrics(
        aux_count=len(q.aux_vars),
        new_quadratic_terms=len(_quadratic_monomials(merged) - existing),
        group_quadratic_terms=per_gadget,
        coeff_min=min(coeffs, default=0.0),
        coeff_max=max(coeffs, default=0.0),
        group_coeff_min=min(piece_coeffs, default=0.0),
        group_coeff_max=max(piece_coeffs, default=0.0),
    )


def compare(
    p: Polynomial,
    tol: float = DEFAULT_TOLERANCE,
    budget_log2: int = 28,
) -> pd.DataFrame:
    """Metrics of every method on ``p``, one row per method.

    ``verified`` is None when exhaustive checking would exceed the budget.
    """
    from src.partition import quadratize_n

    rows = []
    for method in ("theorem1", "rosenberg", "termwise"):
        q = quadratize_n(p, method=method, tol=tol)
        try:
            verified = verify_perfect(p, q.quadratic, q.aux_vars, tol=tol, tol_rel=tol,
                                      budget_log2=budget_log2).ok
        except BudgetExceededError:
            verified = None
        rows.append({"method": method, **asdict(metrics(q, p)), "verified": verified})
    return pd.DataFrame(rows)

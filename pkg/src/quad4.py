"""One-auxiliary quadratization of 4-variable functions.

The super-quadratic part of a function of four binary variables b1..b4 is

    A*b1b2b3b4 + a123*b1b2b3 + a124*b1b2b4 + a134*b1b3b4 + a234*b2b3b4

Four gadget families (L1..L4) each cover part of the coefficient space; bit
flips and relabelings move any coefficient vector into one of them. Gadgets
are built on local variables 0..3 (b1..b4) and 4 (the auxiliary) and mapped
onto the caller's variables afterwards.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, spec: str) -> str:
            return format(str(self.value), spec)
from itertools import combinations, permutations

from src.errors import (
    DegreeExceededError,
    InternalQuadratizationError,
    InterpretationError,
    PreconditionError,
)
from src.oracle import verify_perfect
from src.polynomial import (
    DEFAULT_TOLERANCE,
    Polynomial,
    degree_split,
    flip_variables,
)

AUX_LOCAL = 4
BOUNDARY_TOL = 1e-12
_TRIPLES = list(combinations(range(4), 3))


class Lemma(StrEnum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"


@dataclass(frozen=True)
class Coeffs4:
    """Quartic coefficient plus the four cubic ones, indexed by omitted variable.

    ``cubics[k]`` multiplies the triple that leaves out local variable ``k``,
    so ``cubics == (a234, a134, a124, a123)``.
    """

    quartic: float
    cubics: tuple[float, float, float, float]

    @classmethod
    def from_alphas(
        cls, a1234: float, a123: float, a124: float, a134: float, a234: float
    ) -> "Coeffs4":
        return cls(float(a1234), (float(a234), float(a134), float(a124), float(a123)))

    def alphas(self) -> tuple[float, float, float, float, float]:
        """(a1234, a123, a124, a134, a234)."""
        return (self.quartic, *self.ascending())

    def ascending(self) -> tuple[float, float, float, float]:
        """(a123, a124, a134, a234); non-decreasing when canonical."""
        return self.cubics[3], self.cubics[2], self.cubics[1], self.cubics[0]

    def cubic(self, triple: Sequence[int]) -> float:
        (omitted,) = set(range(4)) - set(triple)
        return self.cubics[omitted]

    def containing(self, *positions: int) -> float:
        """Sum of the cubic coefficients whose triple contains all ``positions``."""
        return sum(self.cubic(t) for t in _TRIPLES if all(p in t for p in positions))

    @property
    def is_zero(self) -> bool:
        return self.quartic == 0.0 and not any(self.cubics)


@dataclass(frozen=True)
class CasePlan:
    """How one group is quadratized.

    ``flip_mask`` holds 1-based positions (b1..b4) of the group support that are
    flipped first. ``permutation[k]`` is the 1-based support position playing
    the role of b(k+1) in the gadget; None means "canonicalize after flipping".
    ``case_row`` is the row of the 35-case table, or "fallback"/"direct".
    ``pre_flip`` is the b1 flip applied first when the quartic is negative; a
    position in both sets is flipped twice, i.e. left alone.
    """

    flip_mask: frozenset[int]
    permutation: tuple[int, int, int, int] | None
    lemma: Lemma
    case_row: int | str
    pre_flip: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.lemma is Lemma.L2 and not self.flip_mask and isinstance(self.case_row, int):
            raise ValueError("the 35-case table only plans L2 after a bit flip")

    @property
    def effective_flips(self) -> frozenset[int]:
        return self.flip_mask ^ self.pre_flip


@dataclass
class ProvenanceRecord:
    """Where one auxiliary (or one gadget) of a quadratization came from."""

    support: tuple[int, ...]
    method: str
    plan: CasePlan | None = None
    aux: int | None = None
    gadget: Polynomial | None = None
    penalty: float | None = None


@dataclass
class Quadratization:
    """Degree-<=2 polynomial, its auxiliary variables, and how it was built."""

    quadratic: Polynomial
    aux_vars: list[int] = field(default_factory=list)
    provenance: list[ProvenanceRecord] = field(default_factory=list)
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.quadratic.degree > 2:
            raise ValueError(f"quadratization has degree {self.quadratic.degree}")
        if len(set(self.aux_vars)) != len(self.aux_vars):
            raise ValueError("auxiliary variables must be distinct")

    def originals(self) -> tuple[int, ...]:
        aux = set(self.aux_vars)
        return tuple(v for v in self.quadratic.variables if v not in aux)

    @property
    def fallback_count(self) -> int:
        return sum(
            1 for r in self.provenance if r.plan is not None and r.plan.case_row == "fallback"
        )


# --- gadget formulas ---------------------------------------------------------


def lemma_preconditions(c: Coeffs4, lemma: Lemma, tol: float = BOUNDARY_TOL) -> str | None:
    """Name of the satisfied precondition branch of ``lemma``, or None."""
    A = c.quartic
    a123, a124, a134, a234 = c.ascending()

    def le(*xs: float) -> bool:
        return all(x <= y + tol for x, y in zip(xs, xs[1:]))

    if lemma is Lemma.L1:
        if A < -tol:
            return None
        if all(x >= -A / 2 - tol for x in c.cubics):
            return "all cubics >= -A/2"
        if le(-A, a123, -A / 2) and min(a124, a134, a234) >= -tol:
            return "one cubic in [-A, -A/2], rest >= 0"
        if le(-A, a123, -A / 2, a124, a134, a234, 0.0) and a123 + a124 >= -A - tol:
            return "one cubic in [-A, -A/2], rest in [-A/2, 0], a123 + a124 >= -A"
        return None
    if lemma is Lemma.L2:
        if A <= tol and max(c.cubics) <= tol:
            return "all coefficients <= 0"
        return None
    if lemma is Lemma.L3:
        if A >= -tol and a123 <= -A + tol and le(-A / 2, a124, a134, 0.0, a234):
            return "a123 <= -A, -A/2 <= a124 <= a134 <= 0 <= a234"
        return None
    if A >= -tol and le(a123, -A / 2, a124, a134, a234, 0.0) and a123 + a124 <= -A + tol:
        return "a123 <= -A/2 <= a124 <= a134 <= a234 <= 0, a123 + a124 <= -A"
    return None


def _require(c: Coeffs4, lemma: Lemma) -> None:
    if lemma_preconditions(c, lemma) is None:
        raise PreconditionError(lemma.value, "no precondition branch holds for " + repr(c.alphas()))


def coeffs4_to_polynomial(c: Coeffs4) -> Polynomial:
    """The super-quadratic 4-variable function on locals 0..3."""
    terms = {(0, 1, 2, 3): c.quartic}
    terms.update({t: c.cubic(t) for t in _TRIPLES})
    return Polynomial(terms)


def _certify(c: Coeffs4, q: Polynomial, lemma: Lemma) -> Polynomial:
    report = verify_perfect(coeffs4_to_polynomial(c), q, [AUX_LOCAL])
    if not report.ok:
        raise InterpretationError(
            f"{lemma.value} gadget fails at {report.witness} (gap {report.worst_gap:.3g})"
        )
    return q


def lemma1(c: Coeffs4, check: bool = True) -> Polynomial:
    """Gadget for A >= 0 with no cubic far below -A/2."""
    if check:
        _require(c, Lemma.L1)
    A = c.quartic
    terms: dict[tuple[int, ...], float] = {(AUX_LOCAL,): 3 * A + sum(c.cubics)}
    for i, j in combinations(range(4), 2):
        terms[(i, j)] = A + c.containing(i, j)
    for i in range(4):
        terms[(i, AUX_LOCAL)] = -(2 * A + c.containing(i))
    return Polynomial(terms)


def lemma2(c: Coeffs4, check: bool = True) -> Polynomial:
    """Gadget for all-non-positive coefficients: every term carries the auxiliary."""
    if check:
        _require(c, Lemma.L2)
    A = c.quartic
    terms: dict[tuple[int, ...], float] = {(AUX_LOCAL,): -3 * A - 2 * sum(c.cubics)}
    for i in range(4):
        terms[(i, AUX_LOCAL)] = A + c.containing(i)
    return Polynomial(terms)


def _lemma3_parts(c: Coeffs4) -> tuple[Polynomial, Polynomial]:
    """(L, M) with gadget L + b_a*M; pairs {b1,b2} and {b3,b4} play distinct roles."""
    A = c.quartic
    a, b, cc, d = c.ascending()
    s = A + cc + d
    low = Polynomial({
        (2,): -a,
        (3,): -b,
        (0, 2): a,
        (1, 2): a,
        (0, 3): b,
        (1, 3): b,
        (2, 3): s,
    })
    slope = Polynomial({
        (): s,
        (0,): -(a + b - cc),
        (1,): -(a + b - d),
        (2,): -(s - a),
        (3,): -(s - b),
    })
    return low, slope


def lemma3(c: Coeffs4, check: bool = True) -> Polynomial:
    """Gadget for one cubic below -A, two in [-A/2, 0] and one non-negative."""
    if check:
        _require(c, Lemma.L3)
    low, slope = _lemma3_parts(c)
    q = low + slope * Polynomial.variable(AUX_LOCAL)
    return _certify(c, q, Lemma.L3) if check else q


def lemma4(c: Coeffs4, check: bool = True) -> Polynomial:
    """Gadget for one cubic below -A/2 and the rest in [-A/2, 0].

    Same construction as L3 written with the auxiliary complemented.
    """
    if check:
        _require(c, Lemma.L4)
    low, slope = _lemma3_parts(c)
    q = low + slope - slope * Polynomial.variable(AUX_LOCAL)
    return _certify(c, q, Lemma.L4) if check else q


LEMMAS = {Lemma.L1: lemma1, Lemma.L2: lemma2, Lemma.L3: lemma3, Lemma.L4: lemma4}


# --- coefficient handling ----------------------------------------------------


def coeffs4_of(p: Polynomial, support: Sequence[int]) -> Coeffs4:
    """Quartic and cubic coefficients of ``p`` on an ordered 4-variable support."""
    if len(support) != 4:
        raise ValueError(f"support must have 4 variables, got {len(support)}")
    cubics = tuple(
        p.coefficient([support[i] for i in range(4) if i != k]) for k in range(4)
    )
    return Coeffs4(p.coefficient(support), cubics)


def canonicalize(c: Coeffs4) -> tuple[Coeffs4, tuple[int, int, int, int]]:
    """Relabel so that a123 <= a124 <= a134 <= a234.

    Returns the canonical coefficients and ``perm`` with ``perm[k]`` the
    original 0-based position now playing b(k+1). Ties keep the input order.
    """
    # the smallest cubic must omit b4, the largest must omit b1
    order = sorted(range(4), key=lambda k: (c.cubics[k], -k))
    perm = (order[3], order[2], order[1], order[0])
    return Coeffs4(c.quartic, tuple(c.cubics[perm[k]] for k in range(4))), perm


# Interval codes relative to the partition points -A, -A/2, 0:
# 1: <= -A, 2: [-A, -A/2], 3: [-A/2, 0], 4: >= 0
# Rows: (a123, a124, a134, a234 intervals), flipped b's, gadget.
# "L1/L4" rows pick L1 when a123 + a124 >= -A and L4 otherwise.
CASE_TABLE: list[tuple[tuple[int, int, int, int], frozenset[int], str]] = [
    ((4, 4, 4, 4), frozenset(), "L1"),
    ((3, 4, 4, 4), frozenset(), "L1"),
    ((2, 4, 4, 4), frozenset(), "L1"),
    ((1, 4, 4, 4), frozenset({4}), "L2"),
    ((3, 3, 4, 4), frozenset(), "L1"),
    ((2, 3, 4, 4), frozenset({2, 4}), "L3"),
    ((1, 3, 4, 4), frozenset({3, 4}), "L1"),
    ((2, 2, 4, 4), frozenset({3, 4}), "L1"),
    ((1, 2, 4, 4), frozenset({3, 4}), "L1"),
    ((1, 1, 4, 4), frozenset({3, 4}), "L1"),
    ((3, 3, 3, 4), frozenset(), "L1"),
    ((2, 3, 3, 4), frozenset({1, 4}), "L4"),
    ((1, 3, 3, 4), frozenset(), "L3"),
    ((2, 2, 3, 4), frozenset({3, 4}), "L1"),
    ((1, 2, 3, 4), frozenset({3, 4}), "L1"),
    ((1, 1, 3, 4), frozenset({3, 4}), "L1"),
    ((2, 2, 2, 4), frozenset({1, 2, 3, 4}), "L4"),
    ((1, 2, 2, 4), frozenset({2, 3}), "L3"),
    ((1, 1, 2, 4), frozenset({3, 4}), "L1"),
    ((1, 1, 1, 4), frozenset({2, 3, 4}), "L2"),
    ((3, 3, 3, 3), frozenset(), "L1"),
    ((2, 3, 3, 3), frozenset(), "L1/L4"),
    ((1, 3, 3, 3), frozenset(), "L4"),
    ((2, 2, 3, 3), frozenset({3, 4}), "L1"),
    ((1, 2, 3, 3), frozenset({3, 4}), "L1"),
    ((1, 1, 3, 3), frozenset({3, 4}), "L1"),
    ((2, 2, 2, 3), frozenset({3, 4}), "L1/L4"),
    ((1, 2, 2, 3), frozenset({2, 3}), "L4"),
    ((1, 1, 2, 3), frozenset({2, 3}), "L3"),
    ((1, 1, 1, 3), frozenset({1, 2, 3, 4}), "L1"),
    ((2, 2, 2, 2), frozenset({1, 2, 3, 4}), "L1"),
    ((1, 2, 2, 2), frozenset({1, 2, 3, 4}), "L1"),
    ((1, 1, 2, 2), frozenset({1, 2, 3, 4}), "L1"),
    ((1, 1, 1, 2), frozenset({1, 2, 3, 4}), "L1"),
    ((1, 1, 1, 1), frozenset({1, 2, 3, 4}), "L1"),
]


def _in_interval(x: float, code: int, A: float, tol: float) -> bool:
    if code == 1:
        return x <= -A + tol
    if code == 2:
        return -A - tol <= x <= -A / 2 + tol
    if code == 3:
        return -A / 2 - tol <= x <= tol
    return x >= -tol


def classify_case(c: Coeffs4, tol: float = BOUNDARY_TOL) -> CasePlan:
    """Row of the 35-case table for canonical coefficients with A >= 0.

    A coefficient on a partition point matches the earliest listed row.
    """
    A = c.quartic
    if A < -tol:
        raise ValueError("classify_case needs a non-negative quartic coefficient")
    alphas = c.ascending()
    for row, (codes, flips, gadget) in enumerate(CASE_TABLE, start=1):
        if all(_in_interval(x, code, A, tol) for x, code in zip(alphas, codes)):
            if gadget == "L1/L4":
                gadget = "L1" if alphas[0] + alphas[1] >= -A - tol else "L4"
            return CasePlan(flips, (1, 2, 3, 4), Lemma(gadget), row)
    raise InternalQuadratizationError(f"no case row matches {c.alphas()}")


# --- end-to-end --------------------------------------------------------------


def _padded_support(f: Polynomial, aux: int) -> tuple[list[int], list[int]]:
    support = list(f.variables)
    if len(support) > 4:
        raise DegreeExceededError(f"expected at most 4 variables, got {len(support)}")
    base = max([*support, aux]) + 1
    phantoms = [base + k for k in range(4 - len(support))]
    return support + phantoms, phantoms


def apply_plan(
    f: Polynomial,
    plan: CasePlan,
    aux: int,
    support: Sequence[int] | None = None,
    check: bool = False,
) -> Polynomial:
    """Quadratic obtained by executing ``plan`` on ``f`` (not verified here).

    ``support`` is the ordered 4-variable support the plan's positions refer to;
    by default the sorted variables of ``f``, padded with placeholder variables
    that are fixed to 0 afterwards.
    """
    if support is None:
        support, phantoms = _padded_support(f, aux)
    else:
        support = list(support)
        phantoms = []
    mask = {support[k - 1] for k in plan.effective_flips}
    flipped = flip_variables(f, mask)
    low, _ = degree_split(flipped)
    coeffs = coeffs4_of(flipped, support)
    if plan.permutation is None:
        coeffs, perm = canonicalize(coeffs)
    else:
        perm = tuple(k - 1 for k in plan.permutation)
        coeffs = Coeffs4(coeffs.quartic, tuple(coeffs.cubics[perm[k]] for k in range(4)))
    gadget = LEMMAS[plan.lemma](coeffs, check=check)
    mapping = {k: support[perm[k]] for k in range(4)}
    mapping[AUX_LOCAL] = aux
    q = flip_variables(low + gadget.relabel(mapping), mask)
    return q.restrict({v: 0 for v in phantoms})


def _verified(f: Polynomial, q: Polynomial, aux: int, tol: float) -> bool:
    return verify_perfect(f, q, [aux], tol=tol, tol_rel=tol).ok


def plan_for(f: Polynomial, aux: int) -> CasePlan:
    """The table plan for ``f``, expressed in positions of its (padded) support."""
    support, _ = _padded_support(f, aux)
    pre_flip = frozenset()
    coeffs = coeffs4_of(f, support)
    if coeffs.quartic < 0:
        pre_flip = frozenset({1})
        coeffs = coeffs4_of(flip_variables(f, {support[0]}), support)
    canonical, perm = canonicalize(coeffs)
    plan = classify_case(canonical)
    table_flips = frozenset(perm[k - 1] + 1 for k in plan.flip_mask)
    # the relabeling apply_plan would pick for the fully flipped coefficients
    flips = table_flips ^ pre_flip
    _, used = canonicalize(coeffs4_of(flip_variables(f, {support[k - 1] for k in flips}), support))
    permutation = tuple(k + 1 for k in used)
    return CasePlan(table_flips, permutation, plan.lemma, plan.case_row, pre_flip=pre_flip)


def _fallback_plans():
    masks = [frozenset(k + 1 for k in range(4) if (word >> k) & 1) for word in range(16)]
    for mask in masks:
        for lemma in Lemma:
            yield CasePlan(mask, None, lemma, "fallback")
    for mask in masks:
        for perm in permutations((1, 2, 3, 4)):
            for lemma in Lemma:
                yield CasePlan(mask, perm, lemma, "fallback")


def quadratize_4var(
    f: Polynomial, aux: int, tol: float = DEFAULT_TOLERANCE
) -> Quadratization:
    """Perfect quadratization of a function of at most 4 variables with one auxiliary.

    The table plan is tried first; if its result does not verify, every flip
    mask, relabeling and gadget is tried in a fixed order.

    Raises:
        DegreeExceededError: If f has more than 4 variables
        InternalQuadratizationError: If no candidate verifies
    """
    if aux in f.variables:
        raise ValueError(f"auxiliary variable {aux} already occurs in f")
    support = tuple(f.variables)
    if len(support) > 4:
        raise DegreeExceededError(f"expected at most 4 variables, got {len(support)}")
    if f.degree <= 2:
        return Quadratization(f, [], [], tol)

    plan = plan_for(f, aux)
    candidates = [plan]
    q = apply_plan(f, plan, aux)
    if not _verified(f, q, aux, tol):
        q = None
        for candidate in _fallback_plans():
            attempt = apply_plan(f, candidate, aux)
            if attempt.degree <= 2 and _verified(f, attempt, aux, tol):
                q, plan = attempt, candidate
                break
            candidates.append(candidate)
        if q is None:
            raise InternalQuadratizationError(
                f"no one-auxiliary gadget verified after {len(candidates)} candidates"
            )
    record = ProvenanceRecord(support, "theorem1", plan=plan, aux=aux, gadget=q)
    return Quadratization(q, [aux], [record], tol)


def complement_aux(q: Polynomial, aux: int) -> Polynomial:
    """Substitute aux <- 1 - aux; the minimum over the auxiliary is unchanged."""
    return flip_variables(q, {aux})

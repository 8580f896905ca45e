"""Multilinear pseudo-Boolean polynomials.

A polynomial maps monomials (sorted tuples of distinct variable indices) to
real coefficients. Variables are non-negative integers; the empty tuple is the
constant term. Instances are immutable, every operation returns a new one.
"""

from collections.abc import Iterable, Mapping, Sequence
from itertools import combinations
from types import MappingProxyType

import numpy as np

from src.errors import LengthMismatchError, MissingVariableError

Monomial = tuple[int, ...]
Assignment = Mapping[int, int]

DEFAULT_EPSILON = 1e-12
DEFAULT_TOLERANCE = 1e-9
MAX_TRUTH_TABLE_VARS = 20


def _monomial(support: Iterable[int]) -> Monomial:
    """Normalize a support to a sorted tuple of distinct variables (b*b = b)."""
    variables = set()
    for v in support:
        v = int(v)
        if v < 0:
            raise ValueError(f"variable index must be non-negative: {v}")
        variables.add(v)
    return tuple(sorted(variables))


def _term_order(item: tuple[Monomial, float]) -> tuple[int, Monomial]:
    return len(item[0]), item[0]


class Polynomial:
    """Immutable multilinear polynomial with zero-pruning threshold ``epsilon``."""

    __slots__ = ("_terms", "epsilon")

    def __init__(
        self,
        terms: Mapping[Iterable[int], float] | None = None,
        epsilon: float = DEFAULT_EPSILON,
    ):
        if epsilon < 0:
            raise ValueError(f"epsilon must be non-negative: {epsilon}")
        merged: dict[Monomial, float] = {}
        for support, coeff in (terms or {}).items():
            mon = _monomial(support)
            merged[mon] = merged.get(mon, 0.0) + float(coeff)
        self.epsilon = epsilon
        self._terms = {
            mon: coeff
            for mon, coeff in sorted(merged.items(), key=_term_order)
            if coeff != 0.0 and abs(coeff) >= epsilon
        }

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[tuple[float, Iterable[int]]],
        epsilon: float = DEFAULT_EPSILON,
    ) -> "Polynomial":
        """Build from ``(coefficient, support)`` pairs; repeated supports are summed."""
        merged: dict[Monomial, float] = {}
        for coeff, support in terms:
            mon = _monomial(support)
            merged[mon] = merged.get(mon, 0.0) + float(coeff)
        return cls(merged, epsilon=epsilon)

    @classmethod
    def constant(cls, value: float) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def variable(cls, var: int, coeff: float = 1.0) -> "Polynomial":
        return cls({(var,): coeff})

    @property
    def terms(self) -> Mapping[Monomial, float]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Monomial, float]]:
        """Terms in canonical order: by degree, then lexicographic support."""
        return list(self._terms.items())

    def coefficient(self, support: Iterable[int]) -> float:
        return self._terms.get(_monomial(support), 0.0)

    @property
    def degree(self) -> int:
        return max((len(mon) for mon in self._terms), default=0)

    @property
    def variables(self) -> tuple[int, ...]:
        found: set[int] = set()
        for mon in self._terms:
            found.update(mon)
        return tuple(sorted(found))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def is_close(self, other: "Polynomial", tol: float = DEFAULT_TOLERANCE) -> bool:
        """Coefficient-wise comparison with absolute tolerance."""
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0.0) - other._terms.get(k, 0.0)) <= tol for k in keys
        )

    def _combine(self, other: "Polynomial", sign: float) -> "Polynomial":
        merged = dict(self._terms)
        for mon, coeff in other._terms.items():
            merged[mon] = merged.get(mon, 0.0) + sign * coeff
        return Polynomial(merged, epsilon=min(self.epsilon, other.epsilon))

    def __add__(self, other: "Polynomial | float") -> "Polynomial":
        if isinstance(other, int | float):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._combine(other, 1.0)

    def __radd__(self, other: "Polynomial | float") -> "Polynomial":
        # sum() starts from 0
        return self.__add__(other)

    def __sub__(self, other: "Polynomial | float") -> "Polynomial":
        if isinstance(other, int | float):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._combine(other, -1.0)

    def __rsub__(self, other: float) -> "Polynomial":
        return Polynomial.constant(other) - self

    def __neg__(self) -> "Polynomial":
        return self * -1.0

    def __mul__(self, other: "Polynomial | float") -> "Polynomial":
        if isinstance(other, int | float):
            return Polynomial(
                {mon: coeff * other for mon, coeff in self._terms.items()},
                epsilon=self.epsilon,
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        product: dict[Monomial, float] = {}
        for mon_a, ca in self._terms.items():
            for mon_b, cb in other._terms.items():
                mon = _monomial(mon_a + mon_b)
                product[mon] = product.get(mon, 0.0) + ca * cb
        return Polynomial(product, epsilon=min(self.epsilon, other.epsilon))

    def __rmul__(self, other: float) -> "Polynomial":
        return self.__mul__(other)

    def relabel(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Rename variables; variables absent from ``mapping`` keep their index."""
        images = [mapping.get(v, v) for v in self.variables]
        if len(set(images)) != len(images):
            raise ValueError("relabel mapping must be injective on the polynomial's variables")
        return Polynomial(
            {tuple(mapping.get(v, v) for v in mon): c for mon, c in self._terms.items()},
            epsilon=self.epsilon,
        )

    def restrict(self, values: Mapping[int, int]) -> "Polynomial":
        """Substitute constants 0/1 for some variables."""
        out: dict[Monomial, float] = {}
        for mon, coeff in self._terms.items():
            if any(values.get(v, 1) == 0 for v in mon):
                continue
            rest = tuple(v for v in mon if v not in values)
            out[rest] = out.get(rest, 0.0) + coeff
        return Polynomial(out, epsilon=self.epsilon)

    def __repr__(self) -> str:
        if not self._terms:
            return "Polynomial(0)"
        parts = []
        for mon, coeff in self._terms.items():
            factors = "".join(f"*x{v}" for v in mon)
            parts.append(f"{coeff:+g}{factors}")
        return f"Polynomial({' '.join(parts)})"


def monomial(coeff: float, support: Iterable[int]) -> Polynomial:
    """Single-term polynomial ``coeff * prod(b_v for v in support)``."""
    return Polynomial({tuple(support): coeff})


def evaluate(p: Polynomial, x: Assignment | Sequence[int]) -> float:
    """Value of ``p`` at a 0/1 assignment.

    Raises:
        MissingVariableError: If ``x`` does not assign one of p's variables
    """
    total = 0.0
    for mon, coeff in p.items():
        value = coeff
        for v in mon:
            try:
                bit = x[v]
            except (KeyError, IndexError):
                raise MissingVariableError(v) from None
            if not bit:
                value = 0.0
                break
        total += value
    return total


def tabulate(p: Polynomial, variables: Sequence[int]) -> np.ndarray:
    """Values of ``p`` on all 2^k assignments of ``variables``.

    Row ``i`` assigns ``variables[j]`` the value of bit ``j`` of ``i``.
    """
    position = {v: j for j, v in enumerate(variables)}
    size = 1 << len(variables)
    idx = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.float64)
    for mon, coeff in p.items():
        mask = 0
        for v in mon:
            if v not in position:
                raise MissingVariableError(v)
            mask |= 1 << position[v]
        if mask == 0:
            out += coeff
        else:
            out[(idx & mask) == mask] += coeff
    return out


def truth_table_to_multilinear(
    values: Sequence[float] | np.ndarray,
    n: int,
    variables: Sequence[int] | None = None,
    epsilon: float = DEFAULT_EPSILON,
) -> Polynomial:
    """Unique multilinear polynomial taking ``values[i]`` at assignment ``i``.

    Bit ``j`` of ``i`` is the value of variable ``j`` (or ``variables[j]``).
    Uses the fast Moebius transform over the subset lattice.
    """
    if n < 0 or n > MAX_TRUTH_TABLE_VARS:
        raise LengthMismatchError(
            f"truth tables support 0..{MAX_TRUTH_TABLE_VARS} variables, got {n}"
        )
    table = np.array(values, dtype=np.float64).ravel()
    if table.shape != (1 << n,):
        raise LengthMismatchError(f"expected {1 << n} values for n={n}, got {table.size}")
    if variables is None:
        variables = range(n)
    if len(variables) != n:
        raise LengthMismatchError(f"expected {n} variables, got {len(variables)}")

    for j in range(n):
        view = table.reshape(-1, 2, 1 << j)
        view[:, 1, :] -= view[:, 0, :]

    terms: dict[Monomial, float] = {}
    for i in np.flatnonzero(table):
        support = tuple(variables[j] for j in range(n) if (int(i) >> j) & 1)
        terms[support] = float(table[i])
    return Polynomial(terms, epsilon=epsilon)


def flip_variables(p: Polynomial, mask: Iterable[int]) -> Polynomial:
    """Substitute ``b_v <- 1 - b_v`` for every ``v`` in ``mask`` and expand.

    Flipping a variable that does not occur in ``p`` leaves it unchanged.
    """
    flipped = set(mask)
    if not flipped:
        return p
    out: dict[Monomial, float] = {}
    for mon, coeff in p.items():
        hit = [v for v in mon if v in flipped]
        rest = tuple(v for v in mon if v not in flipped)
        for size in range(len(hit) + 1):
            sign = -1.0 if size % 2 else 1.0
            for chosen in combinations(hit, size):
                key = _monomial(rest + chosen)
                out[key] = out.get(key, 0.0) + sign * coeff
    return Polynomial(out, epsilon=p.epsilon)


def degree_split(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split into (terms of degree <= 2, terms of degree >= 3)."""
    low = {mon: c for mon, c in p.items() if len(mon) <= 2}
    high = {mon: c for mon, c in p.items() if len(mon) >= 3}
    return Polynomial(low, epsilon=p.epsilon), Polynomial(high, epsilon=p.epsilon)

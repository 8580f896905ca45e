"""Built-in example functions and the published quadratics they are checked against.

Supports are written 1-based as in print; tokens ``"a1"``, ``"a2"``, ... name
the auxiliaries, numbered after the example's originals.
"""

from collections.abc import Iterable, Mapping

import numpy as np

from src.polynomial import Polynomial, truth_table_to_multilinear
from src.quad4 import ProvenanceRecord, Quadratization

Token = int | str


def _var(token: Token, n: int) -> int:
    if isinstance(token, str):
        return n + int(token.removeprefix("a")) - 1
    return token - 1


def poly(terms: Iterable[tuple[float, Iterable[Token]]], n: int = 0) -> Polynomial:
    """Polynomial from ``(coefficient, 1-based support)`` pairs."""
    return Polynomial.from_terms((c, [_var(t, n) for t in support]) for c, support in terms)


def aux_line(aux: str, constant: float, slopes: Mapping[int, float], n: int) -> Polynomial:
    """``b_aux * (constant + sum slopes[i] * b_i)``."""
    terms = [(constant, [aux])] + [(c, [aux, i]) for i, c in slopes.items()]
    return poly(terms, n)


def _digits(support: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in support)


def _short(terms: Iterable[tuple[float, str]]) -> Polynomial:
    """``(coefficient, "1234")`` pairs for examples with at most 9 variables."""
    return poly((c, _digits(s)) for c, s in terms)


# --- input functions ---------------------------------------------------------


def example_a() -> Polynomial:
    """11 terms, 8 variables, two disjoint 4-variable groups plus b1b8."""
    return _short([
        (1, "1234"), (1, "123"), (1, "124"), (2, "134"), (3, "234"),
        (-1, "5678"), (-2, "567"), (-3, "568"), (-4, "578"), (-5, "678"),
        (1, "18"),
    ])


def example_b(n_blocks: int) -> Polynomial:
    """Chain of ``n_blocks`` 4-variable blocks linked by negative pair terms.

    Block k on b(4k+1)..b(4k+4) is ``2*b1b2b3b4 - b1b2b4`` in local numbering;
    consecutive blocks are joined by ``-b(4k+4)b(4k+5)``.
    """
    if n_blocks < 1:
        raise ValueError(f"chain needs at least one block, got {n_blocks}")
    terms: list[tuple[float, tuple[int, ...]]] = []
    for k in range(n_blocks):
        base = 4 * k
        terms.append((2, (base + 1, base + 2, base + 3, base + 4)))
        terms.append((-1, (base + 1, base + 2, base + 4)))
        if k + 1 < n_blocks:
            terms.append((-1, (base + 4, base + 5)))
    return poly(terms)


def example_c() -> Polynomial:
    """12 terms on 5 variables, every term at least cubic."""
    return _short([
        (5, "1234"), (4, "1235"), (3, "1245"),
        (-3, "123"), (-1, "124"), (-5, "125"), (-1, "134"), (-1, "135"),
        (-1, "145"), (-2, "234"), (-1, "235"), (-4, "245"),
    ])


def example_d() -> Polynomial:
    """All 15 super-quadratic terms on 5 variables."""
    return example_c() + _short([(-3, "345"), (2, "1345"), (1, "2345")])


def example_e_values() -> np.ndarray:
    """arctan(b1 + b2) * exp(min(b2, b3)) * sqrt(5 b4) on all 16 assignments."""
    rows = np.arange(16)
    b1, b2, b3, b4 = ((rows >> j) & 1 for j in range(4))
    return np.arctan(b1 + b2) * np.exp(np.minimum(b2, b3)) * np.sqrt(5 * b4)


def example_e() -> Polynomial:
    """Multilinear form of a non-polynomial 4-variable function."""
    return truth_table_to_multilinear(example_e_values(), 4)


# --- published quadratics ----------------------------------------------------


def _printed(pieces: list[Polynomial], n: int, rest: Polynomial | None = None) -> Quadratization:
    """Quadratization whose provenance holds one record per printed piece."""
    aux_vars = list(range(n, n + len(pieces)))
    records = [
        ProvenanceRecord(tuple(g.variables), "printed", aux=a, gadget=g)
        for g, a in zip(pieces, aux_vars)
    ]
    quadratic = sum(pieces, rest if rest is not None else Polynomial())
    return Quadratization(quadratic, aux_vars, records)


def _c_first_group(n: int) -> Polynomial:
    return poly([(1, (1, 2)), (1, (1, 3)), (3, (1, 4)), (2, (2, 4)), (2, (3, 4))], n) + aux_line(
        "a1", 8, {1: -5, 2: -4, 3: -4, 4: -6}, n
    )


def _c_second_group(n: int, aux: str) -> Polynomial:
    return poly([
        (-3, (1,)), (6, (2,)), (-3, (3,)), (5, (5,)),
        (-5, (1, 2)), (3, (1, 3)), (-5, (1, 5)), (-1, (2, 3)), (-1, (3, 5)),
        (3, ()),
    ], n) + aux_line(aux, -3, {1: 8, 2: -6, 3: 4, 5: -5}, n)


def _c_third_group(n: int, aux: str) -> Polynomial:
    return poly([
        (1, (1,)), (4, (2,)), (3, (1, 2)), (-1, (1, 4)), (-1, (1, 5)), (-4, (2, 4)), (-4, (2, 5)),
    ], n) + aux_line(aux, 3, {1: -4, 2: -7, 4: 5, 5: 5}, n)


def printed_a() -> Quadratization:
    """Published two-auxiliary result; the second group's leading sign is corrected to +."""
    n = 8
    first = poly([
        (3, (1, 2)), (4, (1, 3)), (4, (1, 4)), (5, (2, 3)), (5, (2, 4)), (6, (3, 4)),
    ], n) + aux_line("a1", 10, {1: -6, 2: -7, 3: -8, 4: -8}, n)
    second = aux_line("a2", 31, {5: -10, 6: -11, 7: -12, 8: -13}, n)
    return _printed([first, second], n, rest=poly([(1, (1, 8))]))


def printed_c() -> Quadratization:
    n = 5
    return _printed([_c_first_group(n), _c_second_group(n, "a2"), _c_third_group(n, "a3")], n)


def printed_d() -> Quadratization:
    n = 5
    fourth = aux_line("a4", 6, {1: 2, 3: -3, 4: -3, 5: -3}, n)
    fifth = poly([(1, pair) for pair in ((2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))], n)
    fifth = fifth + aux_line("a5", 3, {2: -2, 3: -2, 4: -2, 5: -2}, n)
    pieces = [
        _c_first_group(n), _c_second_group(n, "a2"), _c_third_group(n, "a3"), fourth, fifth,
    ]
    return _printed(pieces, n)


def printed_d_pairwise() -> Quadratization:
    """Published pairwise-cover result: a1=b1b2, a2=b1b3, a3=b4b5, a4=b2b3, a5=b1b2b3."""
    n = 5
    main = poly([
        (-3, ("a1", 3)), (-1, ("a1", 4)), (-5, ("a1", 5)), (-1, ("a2", 4)), (-1, ("a2", 5)),
        (-1, (1, "a3")), (-2, ("a4", 4)), (-1, ("a4", 5)), (-4, (2, "a3")), (-3, (3, "a3")),
        (5, ("a5", 4)), (4, ("a5", 5)), (3, ("a1", "a3")), (2, ("a2", "a3")), (1, ("a4", "a3")),
    ], n)
    penalties = [
        9 * (aux_line("a5", 5, {1: -2, 2: -2, 3: -2}, n) + poly([(1, ("a1", 3))], n)),
        21 * (aux_line("a1", 3, {1: -2, 2: -2}, n) + poly([(1, (1, 2))], n)),
        4 * (aux_line("a2", 3, {1: -2, 3: -2}, n) + poly([(1, (1, 3))], n)),
        4 * (aux_line("a4", 3, {2: -2, 3: -2}, n) + poly([(1, (2, 3))], n)),
        14 * (aux_line("a3", 3, {4: -2, 5: -2}, n) + poly([(1, (4, 5))], n)),
    ]
    aux_order = [_var(a, n) for a in ("a5", "a1", "a2", "a4", "a3")]
    records = [
        ProvenanceRecord(tuple(g.variables), "printed", aux=a, gadget=g)
        for g, a in zip(penalties, aux_order)
    ]
    return Quadratization(main + sum(penalties, Polynomial()), list(range(n, n + 5)), records)


# Published one-auxiliary quadratic of example E, rounded to 2 decimals; keys are
# 0-based supports with 4 for the auxiliary. Magnitudes only: the printed signs
# of the auxiliary terms are inconsistent with any perfect quadratization.
PRINTED_E_MAGNITUDES: dict[tuple[int, ...], float] = {
    (4,): 5.70,
    (0, 1): 0.20, (0, 2): 1.24, (0, 3): 1.96, (1, 2): 4.26, (1, 3): 4.98, (2, 3): 4.26,
    (0, 4): 1.44, (1, 4): 4.46, (2, 4): 5.50, (3, 4): 4.46,
}

# Substituted pairs of the published Rosenberg results, 0-based.
ROSENBERG_PAIRS: dict[str, list[tuple[int, int]]] = {
    "A": [(0, 1), (2, 3), (4, 5), (6, 7)],
    "C": [(0, 1), (2, 3), (2, 4), (3, 4)],
    "E": [(0, 2), (1, 3)],
}

EXAMPLES = {
    "A": example_a,
    "B": lambda: example_b(2),
    "C": example_c,
    "D": example_d,
    "E": example_e,
}

PRINTED = {
    "A": printed_a,
    "C": printed_c,
    "D": printed_d,
}

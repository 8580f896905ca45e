"""Readers for polynomial, truth-table and QUBO files.

Files number variables from 1; the library numbers them from 0.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.errors import LengthMismatchError, ParseError
from src.polynomial import DEFAULT_EPSILON, Polynomial, truth_table_to_multilinear


@dataclass
class QuboModel:
    """A QUBO file read back into the library's numbering."""

    n: int
    m: int
    polynomial: Polynomial

    @property
    def aux_vars(self) -> list[int]:
        return list(range(self.n, self.n + self.m))


def _content_lines(text: str):
    """Yield (line number, stripped content) with comments and blanks removed."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_float(token: str, number: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", number) from None
    if not np.isfinite(value):
        raise ParseError(f"coefficient must be finite: {token!r}", number)
    return value


def _parse_index(token: str, number: int) -> int:
    try:
        index = int(token)
    except ValueError:
        raise ParseError(f"not a variable index: {token!r}", number) from None
    if index < 1:
        raise ParseError(f"variable indices start at 1, got {index}", number)
    return index - 1


def parse_polynomial(text: str, epsilon: float = DEFAULT_EPSILON) -> Polynomial:
    """Parse ``coefficient : i j k`` lines (1-based indices) into a Polynomial.

    Repeated monomials are summed; an empty support is the constant term.

    Raises:
        ParseError: On malformed lines or a variable repeated within one term
    """
    terms: list[tuple[float, tuple[int, ...]]] = []
    for number, line in _content_lines(text):
        if ":" not in line:
            raise ParseError("expected 'coefficient : indices'", number)
        head, tail = line.split(":", 1)
        coeff = _parse_float(head.strip(), number)
        support = [_parse_index(tok, number) for tok in tail.split()]
        if len(set(support)) != len(support):
            raise ParseError(f"variable repeated in term: {tail.strip()}", number)
        terms.append((coeff, tuple(support)))
    return Polynomial.from_terms(terms, epsilon=epsilon)


def parse_truth_table(text: str, epsilon: float = DEFAULT_EPSILON) -> Polynomial:
    """Parse one value per line (row i assigns bit j of i to variable j).

    Raises:
        ParseError: On a malformed value
        LengthMismatchError: If the number of values is not a power of two
    """
    values = [_parse_float(line, number) for number, line in _content_lines(text)]
    n = max(len(values) - 1, 0).bit_length()
    if len(values) != 1 << n:
        raise LengthMismatchError(f"truth table has {len(values)} values, not a power of two")
    return truth_table_to_multilinear(values, n, epsilon=epsilon)


def read_qubo(text: str) -> QuboModel:
    """Parse a QUBO file: header ``n m c0`` then ``i j coeff`` lines with i <= j.

    Raises:
        ParseError: On a malformed header or entry, or an index outside 1..n+m
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty QUBO file", 1)
    number, header = lines[0]
    fields = header.split()
    if len(fields) != 3:
        raise ParseError("header must be 'n m c0'", number)
    n, m = (_parse_count(tok, number) for tok in fields[:2])
    terms: list[tuple[float, tuple[int, ...]]] = [(_parse_float(fields[2], number), ())]

    for number, line in lines[1:]:
        fields = line.split()
        if len(fields) != 3:
            raise ParseError("entry must be 'i j coeff'", number)
        i, j = (_parse_index(tok, number) for tok in fields[:2])
        if i > j:
            raise ParseError(f"entry must have i <= j, got {i + 1} {j + 1}", number)
        if j >= n + m:
            raise ParseError(f"index {j + 1} exceeds n + m = {n + m}", number)
        terms.append((_parse_float(fields[2], number), (i, j)))
    return QuboModel(n=n, m=m, polynomial=Polynomial.from_terms(terms))


def _parse_count(token: str, number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"not a count: {token!r}", number) from None
    if value < 0:
        raise ParseError(f"count must be non-negative: {value}", number)
    return value


def load_polynomial(path: Path, epsilon: float = DEFAULT_EPSILON) -> Polynomial:
    """Read a polynomial file, pruning coefficients below ``epsilon``.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ParseError: If its content is malformed
    """
    if not path.exists():
        raise FileNotFoundError(f"Polynomial file not found: {path}")
    return parse_polynomial(path.read_text(), epsilon=epsilon)

"""Exact linear algebra over the rationals for integer operator matrices.

Pivoting is lexicographic (first nonzero entry per column) so every result
is deterministic. rank() uses fraction-free integer elimination; the other
routines use plain Fraction reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

Vector = List[Fraction]
Matrix = List[Vector]


def fraction_rows(matrix) -> Matrix:
    return [[Fraction(x) for x in row] for row in matrix]


def _integer_rows(matrix) -> List[List[int]]:
    """Rows scaled to integers (row scaling does not change the rank)."""
    out = []
    for row in matrix:
        fracs = [Fraction(x) for x in row]
        scale = 1
        for f in fracs:
            scale = lcm(scale, f.denominator)
        out.append([int(f * scale) for f in fracs])
    return out


def rank(matrix) -> int:
    """Rank by Bareiss fraction-free elimination on integer rows."""
    rows = _integer_rows(matrix)
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, len(rows)):
            factor = rows[i][c]
            rows[i] = [(pivot * rows[i][j] - factor * rows[r][j]) // prev for j in range(ncols)]
        prev = pivot
        r += 1
        if r == len(rows):
            break
    return r


def rref(matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot column list."""
    rows = fraction_rows(matrix)
    pivots: List[int] = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        rows[r] = [x / pivot for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix) -> List[Vector]:
    """Basis of the right kernel, one vector per free column, ascending."""
    rows = fraction_rows(matrix)
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve(matrix, rhs: Sequence) -> Optional[Vector]:
    """A particular solution of matrix @ x = rhs, or None (free vars = 0)."""
    rows = fraction_rows(matrix)
    b = [Fraction(x) for x in rhs]
    if len(rows) != len(b):
        raise ValueError("right-hand side length does not match the matrix")
    if not rows:
        return []
    ncols = len(rows[0])
    augmented = [row + [val] for row, val in zip(rows, b)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][ncols]
    return x


def matvec(matrix, vec: Sequence) -> Vector:
    """Exact matrix-vector product over the rationals."""
    v = [Fraction(x) for x in vec]
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in matrix]


def independent_columns(matrix) -> List[int]:
    """Indices of a maximal independent column set (pivot columns)."""
    _, pivots = rref(matrix)
    return pivots


class SpanBuilder:
    """Incrementally maintained row space for exact independence tests."""

    def __init__(self) -> None:
        self._rows: dict[int, Vector] = {}  # pivot column -> normalized row

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def add(self, vec: Sequence) -> bool:
        """Add a vector; True when it enlarged the span."""
        v = [Fraction(x) for x in vec]
        for pivot in sorted(self._rows):
            if v[pivot] != 0:
                factor = v[pivot]
                row = self._rows[pivot]
                v = [a - factor * b for a, b in zip(v, row)]
        lead = next((j for j, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        pivot_value = v[lead]
        self._rows[lead] = [x / pivot_value for x in v]
        return True

    def contains(self, vec: Sequence) -> bool:
        v = [Fraction(x) for x in vec]
        for pivot in sorted(self._rows):
            if v[pivot] != 0:
                factor = v[pivot]
                row = self._rows[pivot]
                v = [a - factor * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)


def clear_denominators(vec: Sequence) -> List[int]:
    """Scale a rational vector to coprime integers, first nonzero positive."""
    fracs = [Fraction(x) for x in vec]
    scale = 1
    for f in fracs:
        scale = lcm(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints

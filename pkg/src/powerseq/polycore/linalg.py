"""Exact linear algebra over Q on lists of lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def to_fractions(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def rref(matrix: Sequence[Sequence], column_order: Sequence[int] | None = None):
    """Reduced row echelon form.

    Pivots are searched in ``column_order`` (default left to right).
    Returns ``(rows, pivots)`` where ``pivots[i]`` is the pivot column of
    row ``i``; zero rows are dropped.
    """
    rows = to_fractions(matrix)
    if not rows:
        return [], []
    ncols = len(rows[0])
    order = list(column_order) if column_order is not None else list(range(ncols))
    pivots: list[int] = []
    r = 0
    for col in order:
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def pivot_rows_and_columns(matrix: Sequence[Sequence]) -> tuple[list[int], list[int]]:
    """Row and column indices of a nonsingular maximal square submatrix."""
    rows = to_fractions(matrix)
    if not rows:
        return [], []
    # column pivots from the matrix, row pivots from its transpose
    _, cols = rref(rows)
    sub = [[row[c] for c in cols] for row in rows]
    transpose = [list(col) for col in zip(*sub)] if sub and cols else []
    _, row_idx = rref(transpose) if transpose else ([], [])
    return sorted(row_idx), cols


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = to_fractions(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(to_fractions(matrix), to_fractions([rhs])[0])]
    rows, pivots = rref(aug, range(n))
    if pivots != list(range(n)):
        return None
    return [rows[i][n] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(matrix)
    aug = [
        list(row) + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(to_fractions(matrix))
    ]
    rows, pivots = rref(aug, range(n))
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in rows]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]

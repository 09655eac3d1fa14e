"""Exact integer/rational matrix helpers.

Matrices are tuples of row tuples. Everything here is exact; there is no
floating point anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(int(k == i) for k in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def column(a: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def is_nonneg(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v)


def is_nonpos(v: Sequence[int]) -> bool:
    return all(x <= 0 for x in v)


def _eliminate(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q of a family of vectors."""
    vectors = [list(map(Fraction, v)) for v in vectors]
    if not vectors:
        return 0
    _, pivots = _eliminate(vectors, len(vectors[0]))
    return len(pivots)


def inverse(a: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    rows = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    rows, pivots = _eliminate(rows, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def integer_inverse(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix; raises ValueError otherwise."""
    inv = inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def determinant(a: Sequence[Sequence[int]]) -> int:
    # Bareiss fraction-free elimination
    m = [list(row) for row in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1

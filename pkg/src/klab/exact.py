"""Exact dense linear algebra over the integers and the rationals.

Integer routines are fraction-free (Bareiss); everything stays in Python
ints until a single division at the end.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput

Matrix = list[list]


def _square_copy(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    rows = [list(r) for r in a]
    if any(len(r) != n for r in rows):
        raise InvalidInput("matrix must be square")
    return rows


def _pivot_row(m: Matrix, k: int, key) -> int | None:
    best = None
    for i in range(k, len(m)):
        if m[i][k] != 0 and (best is None or key(m[i][k]) < key(m[best][k])):
            best = i
    return best


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix, fraction-free."""
    m = _square_copy(a)
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        p = _pivot_row(m, k, abs)
        if p is None:
            return 0
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        pkk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            rik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pkk * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]


def fraction_free_inverse(a: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Return ``(b, d)`` with ``inverse(a) == b / d`` and ``d == +-det(a)``.

    Fraction-free Gauss-Jordan on ``[a | I]``: every intermediate entry is a
    minor of the augmented matrix, so each division by the previous pivot is
    exact.
    """
    m = _square_copy(a)
    n = len(m)
    for i, row in enumerate(m):
        row.extend(1 if j == i else 0 for j in range(n))
    width = 2 * n
    prev = 1
    for k in range(n):
        p = _pivot_row(m, k, abs)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        if p != k:
            m[k], m[p] = m[p], m[k]
        rk = m[k]
        pkk = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = m[i]
            rik = ri[k]
            if rik == 0:
                if pkk != prev:
                    for j in range(width):
                        ri[j] = ri[j] * pkk // prev
                continue
            for j in range(width):
                ri[j] = (pkk * ri[j] - rik * rk[j]) // prev
        prev = pkk
    return [row[n:] for row in m], prev


def _fraction_size(x: Fraction) -> int:
    return x.denominator.bit_length() + abs(x.numerator).bit_length()


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a x = b`` exactly by rational Gaussian elimination.

    Pivots are chosen as the entry with the smallest bit size in the column,
    which keeps intermediate fractions short on Laplacian-like systems.
    """
    m = _square_copy(a)
    n = len(m)
    if len(b) != n:
        raise InvalidInput("right-hand side length does not match the matrix order")
    for row, rhs in zip(m, b):
        row[:] = [Fraction(x) for x in row]
        row.append(Fraction(rhs))
    for k in range(n):
        p = _pivot_row(m, k, _fraction_size)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        m[k], m[p] = m[p], m[k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            if ri[k] == 0:
                continue
            f = ri[k] / rk[k]
            for j in range(k, n + 1):
                ri[j] -= f * rk[j]
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = m[k][n] - sum(m[k][j] * x[j] for j in range(k + 1, n))
        x[k] = s / m[k][k]
    return x


def rational_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a rational matrix, column by column through :func:`solve`."""
    n = len(a)
    cols = [solve(a, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def rational_det(a: Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix: clear denominators, then Bareiss."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    scale = Fraction(1)
    ints = []
    for row in m:
        lcm = math.lcm(*(x.denominator for x in row)) if row else 1
        scale *= lcm
        ints.append([int(x * lcm) for x in row])
    if n == 0:
        return Fraction(1)
    return Fraction(bareiss_det(ints)) / scale


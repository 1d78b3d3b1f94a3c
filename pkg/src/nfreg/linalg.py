"""Exact linear algebra over Q and Z on lists of lists.

Matrices are row-major ``list[list[Fraction | int]]``. Nothing here touches
floating point; everything is small (d <= 10, d**2 generators) so plain
Gaussian elimination is fast enough.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

Matrix = list


def to_fractions(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def det(m: Sequence[Sequence]) -> Fraction:
    a = to_fractions(m)
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return sign * result


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    a = [row + ident for row, ident in zip(to_fractions(m), identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve(m: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve m x = b for square nonsingular m."""
    return matvec(inverse(m), b)


def rank(m: Sequence[Sequence]) -> int:
    a = to_fractions(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            f = a[i][col] / a[r][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def common_denominator(values) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), (Fraction(v).denominator for v in values), 1)


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix; zero rows dropped.

    The result is upper triangular with positive pivots and entries above each
    pivot reduced into [0, pivot). Its rows form a Z-basis of the row lattice.
    """
    a = [[int(x) for x in row] for row in rows if any(row)]
    if not a:
        return []
    ncols = len(a[0])
    out: list[list[int]] = []
    r = 0
    for col in range(ncols):
        # Euclid down the column among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(a[i][col]))
            a[r], a[i_min] = a[i_min], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][col] // a[r][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    out = [row for row in a[:r] if any(row)]
    return out


def lattice_basis(generators: Sequence[Sequence]) -> tuple[list[list[Fraction]], int]:
    """Z-basis (HNF) of the lattice spanned by rational generator rows.

    Returns the basis as Fractions plus the common denominator used to scale
    the generators to integers.
    """
    den = common_denominator(x for row in generators for x in row)
    ints = [[int(Fraction(x) * den) for x in row] for row in generators]
    basis = hnf(ints)
    return [[Fraction(x, den) for x in row] for row in basis], den

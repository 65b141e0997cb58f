"""Exact integer linear algebra: fraction-free elimination and rational kernels."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def bareiss_echelon(A: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Fraction-free row echelon form (Bareiss); returns the matrix and its pivot columns.

    Every intermediate entry is an exact integer (a minor of A).
    """
    M = [list(map(int, row)) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, rows):
            mic = M[i][c]
            row_i, row_r = M[i], M[r]
            for j in range(c, cols):
                row_i[j] = (p * row_i[j] - mic * row_r[j]) // prev
            # entries to the left of c in row i are already zero
        for i in range(r + 1, rows):
            M[i][c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Sequence[Sequence[int]]) -> int:
    if not A:
        return 0
    return len(bareiss_echelon(A)[1])


def primitive(v: Sequence[int]) -> list[int]:
    """Divide by the content and make the first nonzero entry positive."""
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        return list(v)
    out = [x // g for x in v]
    first = next(x for x in out if x != 0)
    return out if first > 0 else [-x for x in out]


def kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Integer basis (primitive vectors) of the rational right kernel {x : A x = 0}."""
    if not A:
        if ncols is None:
            raise ValueError("ncols needed for an empty matrix")
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ncols = len(A[0])
    E, piv = bareiss_echelon(A)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(piv) - 1, -1, -1):
            c = piv[r]
            acc = sum((E[r][j] * x[j] for j in range(c + 1, ncols) if E[r][j]), Fraction(0))
            x[c] = -acc / E[r][c]
        den = reduce(lambda a, b: a * b // gcd(a, b), (q.denominator for q in x), 1)
        basis.append(primitive([int(q * den) for q in x]))
    return basis


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def columns_to_matrix(cols: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in zip(*cols)]

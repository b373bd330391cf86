"""Exact determinants over polynomial rings and their fraction fields."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .polynomial import Polynomial
from .univariate import UniPolynomial


def _exact_div(a, b):
    if isinstance(a, (Polynomial, UniPolynomial)):
        return a.exquo(b)
    return a / b


def _check_square(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    return n


def cofactor_determinant(M: Sequence[Sequence]):
    """Laplace expansion along the first row."""
    n = _check_square(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if _is_zero(M[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * cofactor_determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return M[0][0] * 0
    return total


def bareiss_determinant(M: Sequence[Sequence]):
    """Fraction-free Gaussian elimination (Bareiss).

    Every division is exact in the coefficient ring, so polynomial entries
    stay polynomial throughout.
    """
    n = _check_square(M)
    A = [list(row) for row in M]
    if n == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(A[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(A[i][k]):
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return A[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                if prev is not None:
                    v = _exact_div(v, prev)
                A[i][j] = v
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def determinant(M: Sequence[Sequence], method: str = "auto"):
    """Determinant of a square matrix of ring elements.

    ``auto`` uses cofactor expansion for side <= 3 and Bareiss otherwise.
    """
    n = _check_square(M)
    if method == "cofactor" or (method == "auto" and n <= 3):
        return cofactor_determinant(M)
    if method in ("bareiss", "auto"):
        return bareiss_determinant(M)
    raise ValueError(f"unknown method {method!r}")


def leibniz_determinant(M: Sequence[Sequence]):
    n = _check_square(M)
    total = None
    for perm in permutations(range(n)):
        term = None
        for i, j in enumerate(perm):
            term = M[i][j] if term is None else term * M[i][j]
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def adjugate(M: Sequence[Sequence]) -> list[list]:
    """Transpose of the cofactor matrix, so that ``M @ adj(M) = det(M) I``."""
    n = _check_square(M)
    if n == 1:
        return [[M[0][0] * 0 + 1]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]
            c = determinant(minor)
            adj[j][i] = -c if (i + j) % 2 else c
    return adj


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return not x

"""Exact Gaussian elimination over Q(i)."""

from __future__ import annotations

from typing import Sequence

from .gaussian import ZERO, GaussianRational


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[GaussianRational]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[GaussianRational.coerce(x) for x in row] for row in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def solve(A: Sequence[Sequence], b: Sequence) -> list[GaussianRational] | None:
    """One solution x of A x = b, or None when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[-1]
    return x

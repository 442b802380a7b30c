"""Row reduction over a coefficient field (dense lists of field elements)."""

from __future__ import annotations

from .fields import Field


def row_reduce(rows: list[list], K: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    norm = K.normalize
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        A[r] = [norm(v * inv) for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [norm(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: list[list], K: Field) -> int:
    return len(row_reduce(rows, K)[1])


def nullspace(rows: list[list], K: Field, ncols: int) -> list[list]:
    """Basis of {v : rows · v = 0}."""
    if not rows:
        return [[K.one if i == j else K.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = row_reduce(rows, K)
    free = [c for c in range(ncols) if c not in pivots]
    norm = K.normalize
    basis = []
    for fcol in free:
        v = [K.zero] * ncols
        v[fcol] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = norm(-row[fcol])
        basis.append(v)
    return basis

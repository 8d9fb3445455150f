"""Exact linear algebra over the rationals (row reduction, rank, kernels)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None, rhs: list | None = None) -> Tuple[Matrix, List[int], list | None]:
    """Reduced row echelon form.

    ``rhs``, if given, is a list (one entry per row) of objects supporting
    ``+``, ``-`` and multiplication by a Fraction; the same row operations are
    applied to it.  Returns ``(R, pivot_columns, rhs')``.
    """
    A = _copy(rows)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    b = list(rhs) if rhs is not None else None
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        if b is not None:
            b[r], b[p] = b[p], b[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        if b is not None:
            b[r] = b[r] * inv
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
                if b is not None:
                    b[i] = b[i] - b[r] * f
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots, b


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, piv, _ = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: list, ncols: int, zero):
    """Solve A x = b with ``b`` in any module over Q.

    Returns one solution (free variables set to ``zero``) or raises
    ``ValueError`` if the system is inconsistent.
    """
    R, piv, b = rref(rows, ncols, rhs)
    for i in range(len(piv), len(R)):
        if b[i] != zero:
            raise ValueError("inconsistent linear system")
    x = [zero] * ncols
    for i, pc in enumerate(piv):
        x[pc] = b[i]
    return x

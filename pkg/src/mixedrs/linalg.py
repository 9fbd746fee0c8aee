"""Row reduction over GF(q) on integer-encoded numpy matrices."""

from __future__ import annotations

import numpy as np

from .gf import BaseField


def row_reduce(field: BaseField, matrix, ncols: int | None = None):
    """Reduce ``matrix`` to reduced row echelon form.

    Only the first ``ncols`` columns are used as pivot candidates (all of
    them by default), which lets callers reduce an augmented matrix.
    Returns ``(reduced, pivot_columns)``.
    """
    M = np.array(matrix, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    nrows, total = M.shape
    ncols = total if ncols is None else ncols
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.flatnonzero(M[row:, col])
        if nz.size == 0:
            continue
        r = row + int(nz[0])
        if r != row:
            M[[row, r]] = M[[r, row]]
        M[row] = field.vmul(field.vinv(M[row, col]), M[row])
        factors = M[:, col].copy()
        factors[row] = 0
        if factors.any():
            M = field.vsub(M, field.vmul(factors[:, None], M[row][None, :]))
        pivots.append(col)
        row += 1
    return M, pivots


def rank(field: BaseField, matrix) -> int:
    M = np.asarray(matrix, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(row_reduce(field, M)[1])


class SingularSystem(Exception):
    """Raised by :func:`solve` when the system has no unique solution."""

    def __init__(self, consistent: bool, rank: int):
        self.consistent = consistent
        self.rank = rank
        kind = "underdetermined" if consistent else "inconsistent"
        super().__init__(f"{kind} system (rank {rank})")


def solve(field: BaseField, A, b):
    """Solve ``A x = b`` over ``field``; raise :class:`SingularSystem` unless unique."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    nvars = A.shape[1] if A.ndim == 2 else 0
    if A.shape[0] == 0:
        if nvars == 0:
            return np.zeros(0, dtype=np.int64)
        raise SingularSystem(True, 0)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = row_reduce(field, aug, ncols=nvars + 1)
    if pivots and pivots[-1] == nvars:
        raise SingularSystem(False, len(pivots) - 1)
    if len(pivots) < nvars:
        raise SingularSystem(True, len(pivots))
    return R[:nvars, nvars].copy()


def batch_rank(field: BaseField, mats) -> np.ndarray:
    """Ranks of a stack of matrices with shape (batch, rows, cols)."""
    M = np.array(mats, dtype=np.int64, copy=True)
    B, R, C = M.shape
    used = np.zeros((B, R), dtype=bool)
    batch = np.arange(B)
    for col in range(C):
        cand = (M[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        pivot_vals = M[batch, piv, col]
        pivot_vals = np.where(has, pivot_vals, 1)
        prow = field.vmul(field.vinv(pivot_vals)[:, None], M[batch, piv, :])
        factors = M[:, :, col].copy()
        factors[batch, piv] = 0
        factors[~has] = 0
        M = field.vsub(M, field.vmul(factors[:, :, None], prow[:, None, :]))
        used[batch[has], piv[has]] = True
    return used.sum(axis=1)

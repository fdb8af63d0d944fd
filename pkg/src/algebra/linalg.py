"""
Linear Algebra over Finite Fields and F_q(var)

Row reduction, kernels and ranks of FieldArray matrices (galois), plus
exact elimination for matrices whose entries are rational functions.
"""

from typing import List, Sequence, Tuple

import numpy as np

from .polynomials import RationalFn


def rref(M) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form and pivot columns.

    Args:
        M: 2-D FieldArray

    Returns:
        (R, pivots) with R the reduced matrix (same shape as M)
    """
    GF = type(M)
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return M.copy(), []
    R = M.row_reduce()
    pivots = []
    for i in range(min(rows, R.shape[0])):
        nz = np.nonzero(np.asarray(R[i]))[0]
        if nz.size == 0:
            break
        pivots.append(int(nz[0]))
    return GF(R), pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M):
    """
    F-basis of {v : M v = 0}.

    Args:
        M: 2-D FieldArray of shape (rows, cols)

    Returns:
        FieldArray of shape (k, cols) whose rows span the kernel; k = cols - rank
    """
    GF = type(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return GF.Identity(cols)
    R, pivots = rref(M)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = GF.Zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = -R[i, f]
    return basis


def solve_affine(M, b):
    """
    One solution x of M x = b, or None when the system is inconsistent.
    """
    GF = type(M)
    aug = np.hstack([M, b.reshape(-1, 1)]).view(GF)
    kernel = nullspace(aug)
    if kernel.shape[0] == 0:
        return None
    # any kernel vector with last entry -1 gives M x = b
    last = np.asarray(kernel[:, -1])
    hits = np.nonzero(last)[0]
    if hits.size == 0:
        return None
    v = kernel[hits[0]]
    v = v * (-(v[-1] ** -1))
    return v[:-1]


def function_field_rank(rows: Sequence[Sequence[RationalFn]]) -> int:
    """
    Rank over F_q(var) of a matrix of RationalFn, by exact elimination.
    """
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for col in range(ncols):
        pivot = None
        for i in range(rk, len(work)):
            if not work[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        inv = work[rk][col].inv()
        for i in range(rk + 1, len(work)):
            if work[i][col].is_zero():
                continue
            factor = work[i][col] * inv
            work[i] = [work[i][j] - factor * work[rk][j] for j in range(ncols)]
        rk += 1
        if rk == len(work):
            break
    return rk

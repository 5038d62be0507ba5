"""Dense linear algebra over F_p.

Matrices are numpy int64 arrays with entries in [0, p).  Row reduction and
nullspaces go through FLINT's ``nmod_mat``.
"""

from __future__ import annotations

import numpy as np
from flint import nmod_mat

_NUMPY_SAFE = 3_000_000  # p^2 * n stays inside int64 for any realistic n


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def _to_flint(A: np.ndarray, p: int) -> nmod_mat:
    m, n = A.shape
    return nmod_mat(m, n, [int(v) for v in A.ravel()], p)


def _from_flint(M: nmod_mat, m: int, n: int) -> np.ndarray:
    if m == 0 or n == 0:
        return zeros(m, n)
    return np.array([int(v) for v in M.entries()], dtype=np.int64).reshape(m, n)


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    if p < _NUMPY_SAFE:
        return (A @ B) % p
    C = _to_flint(A, p) * _to_flint(B, p)
    return _from_flint(C, A.shape[0], B.shape[1])


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the reduced row echelon form and their pivot columns."""
    m, n = A.shape
    if m == 0 or n == 0:
        return zeros(0, n), []
    R, r = _to_flint(A, p).rref()
    R = _from_flint(R, m, n)[:r]
    pivots = [int(np.flatnonzero(R[i])[0]) for i in range(r)]
    return R, pivots


def rank(A: np.ndarray, p: int) -> int:
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    return _to_flint(A, p).rank()


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {x : A x = 0}, in reduced echelon shape."""
    m, n = A.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    N = zeros(len(free), n)
    for k, j in enumerate(free):
        N[k, j] = 1
        for i, pj in enumerate(piv):
            N[k, pj] = (-R[i, j]) % p
    return N


def solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with A x = b, or None when inconsistent."""
    m, n = A.shape
    aug = np.concatenate([A, b.reshape(m, 1)], axis=1)
    R, piv = rref(aug, p)
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, j in enumerate(piv):
        x[j] = R[i, n]
    return x


def in_row_space(R: np.ndarray, pivots: list[int], v: np.ndarray, p: int) -> bool:
    """Membership of v in the row space of an rref matrix."""
    return not reduce_rows(R, pivots, v.reshape(1, -1), p).any()


def reduce_rows(R: np.ndarray, pivots: list[int], V: np.ndarray, p: int) -> np.ndarray:
    """V minus the combination of rref rows that clears the pivot columns."""
    if not pivots or V.shape[0] == 0:
        return V % p
    return (V - matmul(V[:, pivots], R, p)) % p


def inverse(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    if n == 0:
        return zeros(0, 0)
    return _from_flint(_to_flint(A, p).inv(), n, n)


def is_unit_matrix(A: np.ndarray, p: int) -> bool:
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]

"""
SIF Dense Fallback
Bounded Bunch-Kaufman pivoting for the dense trailing submatrix
"""

import logging
from typing import List, Tuple

import numpy as np

from .exceptions import AsymmetryError, DimensionMismatchError, SingularMatrixError
from .models import (
    NO_PIVOT,
    BlockDiagonal,
    PairBlock,
    PivotChoice,
    PivotKind,
    PivotResult,
    Permutation,
    StabilityConfig,
)
from .pivoting import block_inverse, pair_multipliers, stable_1x1, stable_2x2

logger = logging.getLogger(__name__)


class DenseSymMatrix:
    """Square, exactly symmetric dense matrix"""

    def __init__(self, values):
        a = np.array(values, dtype=np.float64, copy=True)
        if a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"dense matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise AsymmetryError("dense matrix is not symmetric")
        self.values = a

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def _offdiag_abs(a: np.ndarray) -> np.ndarray:
    off = np.abs(a)
    np.fill_diagonal(off, 0.0)
    return off


def _column_max(off: np.ndarray, j: int, exclude: Tuple[int, ...]) -> float:
    col = off[:, j].copy()
    col[list(exclude)] = 0.0
    return float(col.max()) if col.size else 0.0


def _passes(a: np.ndarray, off: np.ndarray, pivot: PivotChoice, alpha: float) -> bool:
    if pivot.kind is PivotKind.ONE_BY_ONE:
        (i,) = pivot.columns
        return stable_1x1(a[i, i], _column_max(off, i, (i,)), alpha)
    i, j = pivot.columns
    return stable_2x2(a[i, i], a[i, j], a[j, j],
                      _column_max(off, i, (i, j)), _column_max(off, j, (i, j)), alpha)


def _one(a: np.ndarray, i: int) -> PivotChoice:
    return PivotChoice.one_by_one(i, a[i, i])


def _two(a: np.ndarray, i: int, j: int) -> PivotChoice:
    i, j = min(i, j), max(i, j)
    return PivotChoice.two_by_two(i, j, a[i, i], a[i, j], a[j, j])


def _exhaustive_select(a: np.ndarray, off: np.ndarray, alpha: float) -> PivotResult:
    """
    Largest diagonal against largest off-diagonal over the whole matrix.

    With alpha <= 0.5 the result always satisfies the alpha tests.
    """
    diag = np.abs(np.diag(a))
    p = int(np.argmax(diag))
    mu0 = float(diag[p])
    iu, ju = np.triu_indices(a.shape[0], 1)
    mu1 = 0.0
    if iu.size:
        q = int(np.argmax(off[iu, ju]))
        mu1 = float(off[iu[q], ju[q]])
    # mu1 bounds every column, so the growth test against it is conservative
    if stable_1x1(a[p, p], mu1, alpha):
        return _one(a, p)
    if mu1 > 0.0:
        return _two(a, int(iu[q]), int(ju[q]))
    return NO_PIVOT


def bbk_select(m: DenseSymMatrix, cfg: StabilityConfig) -> PivotResult:
    """
    Bounded Bunch-Kaufman choice on a dense symmetric matrix.

    The Bunch-Kaufman test on the first nonzero column comes first. When it
    fails, the search moves to the column holding the current largest
    off-diagonal until that element dominates its own column too (2-by-2) or
    a diagonal passes the growth test (1-by-1). A candidate that violates the
    alpha bound falls back to a whole-matrix search.
    """
    a = m.values
    if m.dim == 0:
        return NO_PIVOT
    off = _offdiag_abs(a)
    omega = cfg.bk_constant

    nonzero = np.flatnonzero(np.any(a != 0.0, axis=0))
    if nonzero.size == 0:
        return NO_PIVOT
    k = int(nonzero[0])

    r = int(np.argmax(off[:, k]))
    lam1 = float(off[r, k])
    if lam1 == 0.0:
        return _one(a, k)
    if abs(a[k, k]) >= omega * lam1:
        candidate = _one(a, k)
    else:
        i, lam_i, j = k, lam1, r
        while True:
            s = int(np.argmax(off[:, j]))
            lam_j = float(off[s, j])
            if abs(a[j, j]) >= omega * lam_j:
                candidate = _one(a, j)
                break
            if lam_j <= lam_i:
                candidate = _two(a, i, j)
                break
            i, lam_i, j = j, lam_j, s

    if _passes(a, off, candidate, cfg.alpha):
        return candidate
    logger.debug("bounded search candidate %s exceeds 1/alpha, searching whole block", candidate.columns)
    return _exhaustive_select(a, off, cfg.alpha)


def _swap(a: np.ndarray, lower: np.ndarray, perm: np.ndarray, k: int, p: int, q: int) -> None:
    if p == q:
        return
    a[[p, q], :] = a[[q, p], :]
    a[:, [p, q]] = a[:, [q, p]]
    lower[[p, q], :k] = lower[[q, p], :k]
    perm[[p, q]] = perm[[q, p]]


def _symmetric_part(update: np.ndarray) -> np.ndarray:
    upper = np.triu(update)
    return upper + np.triu(upper, 1).T


def dense_factorize(m: DenseSymMatrix, cfg: StabilityConfig) -> Tuple[Permutation, np.ndarray, BlockDiagonal]:
    """
    Factorize a dense block as P^T m P = L B L^T.

    Returns the local permutation, the dense unit lower triangular L and the
    block diagonal B.
    """
    d = m.dim
    a = m.values.copy()
    lower = np.eye(d)
    perm = np.arange(d)
    blocks: List = []

    k = 0
    while k < d:
        pivot = bbk_select(DenseSymMatrix(a[k:, k:]), cfg)
        if pivot is NO_PIVOT:
            raise SingularMatrixError(f"trailing {d - k}x{d - k} dense block is zero")

        if pivot.kind is PivotKind.ONE_BY_ONE:
            _swap(a, lower, perm, k, k, k + pivot.columns[0])
            c = a[k + 1:, k].copy()
            lower[k + 1:, k] = c / a[k, k]
            a[k + 1:, k + 1:] -= _symmetric_part(np.outer(lower[k + 1:, k], c))
            blocks.append(pivot.block())
            k += 1
        else:
            i, j = pivot.columns
            _swap(a, lower, perm, k, k, k + i)
            _swap(a, lower, perm, k, k + 1, k + j)
            inv = block_inverse(a[k, k], a[k + 1, k], a[k + 1, k + 1])
            if inv is None:
                raise SingularMatrixError(f"2x2 dense pivot at position {k} is singular")
            c = a[k + 2:, k:k + 2].copy()
            w = pair_multipliers(c, inv)
            lower[k + 2:, k:k + 2] = w
            a[k + 2:, k + 2:] -= _symmetric_part(w @ c.T)
            blocks.append(PairBlock(float(a[k, k]), float(a[k + 1, k]), float(a[k + 1, k + 1])))
            k += 2

    return Permutation(perm), lower, BlockDiagonal(blocks)

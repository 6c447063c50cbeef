"""
SIF Factorizer
Right-looking sparse LBL^T elimination with a dense tail
"""

import logging
from typing import List, Tuple

import numpy as np

from .dense import DenseSymMatrix, dense_factorize
from .exceptions import DimensionMismatchError, SingularMatrixError
from .models import (
    NO_PIVOT,
    BlockDiagonal,
    Factorization,
    FactorizeOptions,
    FactorizeStats,
    Permutation,
    PivotChoice,
    PivotKind,
    SparseLowerTriangular,
    SymmetricSparseMatrix,
)
from .pivoting import (
    EliminationState,
    LiveSubmatrix,
    block_inverse,
    pair_multipliers,
    select_pivot,
    update_after_elimination,
)

logger = logging.getLogger(__name__)

# (original row indices, values) of one column of L
LColumn = Tuple[np.ndarray, np.ndarray]


def should_switch_dense(state: EliminationState, opts: FactorizeOptions) -> bool:
    """True once the remaining matrix is dense enough or small enough"""
    if len(state) <= opts.dense_switch_min_dim:
        return True
    return state.offdiag_density() >= opts.dense_switch_density


def eliminate_pivot(remaining: LiveSubmatrix, pivot: PivotChoice) -> Tuple[List[LColumn], List[int]]:
    """
    Eliminate ``pivot`` from ``remaining`` in place.

    Forms the columns of L (C B^-1) and replaces the neighbourhood by the
    Schur complement Z - C B^-1 C^T. Returns the L columns and the sorted
    neighbour indices whose patterns changed.
    """
    cols = pivot.columns
    rows = remaining.neighbors(cols)
    r = np.array(rows, dtype=np.int64)

    if pivot.kind is PivotKind.ONE_BY_ONE:
        (p,) = cols
        col = remaining.column(p)
        c = np.array([col[x] for x in rows])
        l = c / pivot.values[0]
        update = np.outer(l, c)
        l_cols = [(r, l)]
    else:
        i, j = cols
        inv = block_inverse(*pivot.values)
        if inv is None:
            raise SingularMatrixError(f"2x2 pivot ({i}, {j}) is singular")
        col_i, col_j = remaining.column(i), remaining.column(j)
        c = np.array([[col_i.get(x, 0.0), col_j.get(x, 0.0)] for x in rows]).reshape(-1, 2)
        w = pair_multipliers(c, inv)
        update = w @ c.T
        l_cols = [(r, w[:, 0].copy()), (r, w[:, 1].copy())]

    remaining.remove_columns(cols)
    if rows:
        remaining.subtract_symmetric(rows, update)
    return l_cols, rows


def _dense_phase(state: EliminationState, opts: FactorizeOptions,
                 order: List[int], l_columns: List[LColumn], blocks: List) -> Tuple[int, int]:
    indices = state.active_order()
    if not indices:
        return 0, 0
    dense = state.remaining.to_dense(indices)
    local_perm, lower, dense_blocks = dense_factorize(DenseSymMatrix(dense), opts.stability)

    originals = np.array(indices, dtype=np.int64)[local_perm.inverse]
    d = len(indices)
    for k in range(d):
        below = lower[k + 1:, k]
        nz = np.flatnonzero(below)
        l_columns.append((originals[k + 1 + nz], below[nz].copy()))
    order.extend(originals.tolist())
    blocks.extend(dense_blocks)
    return dense_blocks.count(1), dense_blocks.count(2)


def factorize(A: SymmetricSparseMatrix, opts: FactorizeOptions = None) -> Tuple[Factorization, FactorizeStats]:
    """
    Compute P^T A P = L B L^T.

    Pivots come from the minimum degree / stability selection until the
    remaining matrix is dense (or no sparse pivot exists); the rest is
    handed to the bounded Bunch-Kaufman dense phase.
    """
    opts = opts or FactorizeOptions()
    n = A.n
    if n < 1:
        raise DimensionMismatchError("cannot factorize an empty matrix")

    stats = FactorizeStats(n, opts.stability.alpha)
    state = EliminationState.from_matrix(A)
    order: List[int] = []
    l_columns: List[LColumn] = []
    blocks: List = []

    while state.active:
        if should_switch_dense(state, opts):
            logger.info("switching to dense phase with %d columns left", len(state))
            break
        pivot = select_pivot(state, opts.stability)
        if pivot is NO_PIVOT:
            logger.info("no sparse pivot among %d columns, falling back to dense phase", len(state))
            break
        logger.debug("pivot %s", pivot.columns)
        cols, touched = eliminate_pivot(state.remaining, pivot)
        update_after_elimination(state, pivot, state.remaining, touched)
        order.extend(pivot.columns)
        l_columns.extend(cols)
        blocks.append(pivot.block())
        if pivot.kind is PivotKind.ONE_BY_ONE:
            stats.num_1x1 += 1
        else:
            stats.num_2x2 += 1

    if state.active:
        stats.dense_switch_at = len(state)
        try:
            stats.dense_1x1, stats.dense_2x2 = _dense_phase(state, opts, order, l_columns, blocks)
        except SingularMatrixError as e:
            raise SingularMatrixError(
                f"matrix is singular: {e} ({stats.num_1x1 + 2 * stats.num_2x2} columns eliminated)"
            ) from e

    perm = Permutation(order)
    positioned = [(perm.forward[rows], vals) for rows, vals in l_columns]
    L = SparseLowerTriangular.from_columns(n, positioned)
    B = BlockDiagonal(blocks)

    stats.nnz_L = L.nnz + n
    stats.max_abs_L = L.max_abs()
    logger.info("factorized n=%d: nnz(L)=%d, 1x1=%d, 2x2=%d, dense tail=%s",
                n, stats.nnz_L, stats.total_1x1, stats.total_2x2, stats.dense_switch_at)
    return Factorization(perm, L, B), stats

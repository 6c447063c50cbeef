"""
SIF Pivot Selection
Minimum degree pivot selection with 1-by-1 / 2-by-2 stability thresholds
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .models import (
    NO_PIVOT,
    PivotChoice,
    PivotResult,
    StabilityConfig,
    SymmetricSparseMatrix,
)

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(np.float64).eps)


class LiveSubmatrix:
    """
    Mutable symmetric store of the matrix that remains to be factorized.

    Columns are keyed by original index and hold {row: value}; both triangles
    are kept and exact zeros are never stored.
    """

    def __init__(self, n: int):
        self.n = n
        self._cols: Dict[int, Dict[int, float]] = {}

    @classmethod
    def from_matrix(cls, m: SymmetricSparseMatrix) -> 'LiveSubmatrix':
        live = cls(m.n)
        for j in range(m.n):
            rows, vals = m.column(j)
            live._cols[j] = dict(zip(rows.tolist(), vals.tolist()))
        return live

    def indices(self) -> List[int]:
        return sorted(self._cols)

    def column(self, j: int) -> Dict[int, float]:
        return self._cols[j]

    def get(self, i: int, j: int) -> float:
        return self._cols[j].get(i, 0.0)

    def diag(self, j: int) -> float:
        return self._cols[j].get(j, 0.0)

    def offdiag_count(self, j: int) -> int:
        col = self._cols[j]
        return len(col) - (j in col)

    def column_max(self, j: int, exclude: Tuple[int, ...]) -> float:
        """max |a_rj| over stored rows r not in ``exclude``"""
        return max((abs(v) for r, v in self._cols[j].items() if r not in exclude), default=0.0)

    def neighbors(self, columns: Sequence[int]) -> List[int]:
        """Sorted union of the patterns of ``columns``, the columns themselves excluded"""
        rows: Set[int] = set()
        for c in columns:
            rows.update(self._cols[c])
        rows.difference_update(columns)
        return sorted(rows)

    def remove_columns(self, columns: Sequence[int]) -> None:
        for c in columns:
            for r in self._cols.pop(c):
                if r not in columns:
                    self._cols[r].pop(c, None)

    def subtract_symmetric(self, rows: Sequence[int], update: np.ndarray) -> None:
        """a[rows, rows] -= update, reading the upper triangle of ``update`` only"""
        values = update.tolist()
        cols = self._cols
        k = len(rows)
        for a in range(k):
            ra = rows[a]
            col_a = cols[ra]
            upd = values[a]
            for b in range(a, k):
                rb = rows[b]
                new = col_a.get(rb, 0.0) - upd[b]
                if new == 0.0:
                    col_a.pop(rb, None)
                    if rb != ra:
                        cols[rb].pop(ra, None)
                else:
                    col_a[rb] = new
                    cols[rb][ra] = new

    def to_dense(self, order: Sequence[int]) -> np.ndarray:
        pos = {c: k for k, c in enumerate(order)}
        out = np.zeros((len(order), len(order)))
        for c in order:
            for r, v in self._cols[c].items():
                out[pos[r], pos[c]] = v
        return out

    def snapshot(self) -> SymmetricSparseMatrix:
        """Copy in the original index space; eliminated columns are empty"""
        return SymmetricSparseMatrix.from_columns(self.n, self._cols)


class EliminationState:
    """Remaining submatrix, active column set and cached off-diagonal counts"""

    def __init__(self, remaining: LiveSubmatrix, active: Optional[Iterable[int]] = None):
        self.n = remaining.n
        self.remaining = remaining
        self.active: Set[int] = set(remaining.indices() if active is None else active)
        self.degree: Dict[int, int] = {j: remaining.offdiag_count(j) for j in self.active}
        self.eliminated = self.n - len(self.active)

    @classmethod
    def from_matrix(cls, m: SymmetricSparseMatrix) -> 'EliminationState':
        return cls(LiveSubmatrix.from_matrix(m))

    def __len__(self) -> int:
        return len(self.active)

    def active_order(self) -> List[int]:
        return sorted(self.active)

    def minimum_degree_order(self) -> List[int]:
        """Active columns by increasing degree, ties by smallest index"""
        degree = self.degree
        return sorted(self.active, key=lambda j: (degree[j], j))

    def offdiag_density(self) -> float:
        m = len(self.active)
        if m <= 1:
            return 1.0
        return sum(self.degree.values()) / float(m * (m - 1))

    def degrees_consistent(self) -> bool:
        return all(self.degree[j] == self.remaining.offdiag_count(j) for j in self.active)


def stable_1x1(a_ii: float, col_max: float, alpha: float) -> bool:
    """
    max_{r != i} |a_ri| / |a_ii| <= 1/alpha with a_ii nonzero.

    The quotient is the largest multiplier a_ri / a_ii exactly as it will be
    rounded into L, so the bound holds on the stored entries.
    """
    return a_ii != 0.0 and col_max / abs(a_ii) <= 1.0 / alpha


def block_inverse(a: float, b: float, c: float) -> Optional[Tuple[float, float, float]]:
    """Closed-form inverse of [[a, b], [b, c]] or None when numerically singular"""
    det = a * c - b * b
    if det == 0.0 or abs(det) <= _EPS * (abs(a * c) + b * b):
        return None
    r = 1.0 / det
    return c * r, -b * r, a * r


def pair_multipliers(c: np.ndarray, inv: Tuple[float, float, float]) -> np.ndarray:
    """
    C B^-1 for a 2-by-2 pivot, one column per pivot column.

    Each entry is rounded as x*inv + y*inv with no fused operations, the
    same sequence stable_2x2 bounds.
    """
    i11, i12, i22 = inv
    return np.column_stack((c[:, 0] * i11 + c[:, 1] * i12, c[:, 0] * i12 + c[:, 1] * i22))


def stable_2x2(a: float, b: float, c: float, max_i: float, max_j: float, alpha: float) -> bool:
    """|block^-1| (max_i, max_j)^T <= (1/alpha, 1/alpha)^T"""
    inv = block_inverse(a, b, c)
    if inv is None:
        return False
    bound = 1.0 / alpha
    i11, i12, i22 = abs(inv[0]), abs(inv[1]), abs(inv[2])
    return i11 * max_i + i12 * max_j <= bound and i12 * max_i + i22 * max_j <= bound


def accept_1x1(state: EliminationState, i: int, cfg: StabilityConfig) -> bool:
    remaining = state.remaining
    return stable_1x1(remaining.diag(i), remaining.column_max(i, (i,)), cfg.alpha)


def candidate_set(state: EliminationState, i: int) -> List[int]:
    """Active z != i with a_iz nonzero, ascending"""
    return sorted(r for r in state.remaining.column(i) if r != i)


def pair_degree(state: EliminationState, i: int, z: int) -> int:
    """Rows l outside {i, z} where a_li or a_lz is nonzero"""
    remaining = state.remaining
    rows = set(remaining.column(i))
    rows.update(remaining.column(z))
    rows.discard(i)
    rows.discard(z)
    return len(rows)


def accept_2x2(state: EliminationState, i: int, j: int, cfg: StabilityConfig) -> bool:
    remaining = state.remaining
    pair = (i, j)
    return stable_2x2(
        remaining.diag(i), remaining.get(i, j), remaining.diag(j),
        remaining.column_max(i, pair), remaining.column_max(j, pair),
        cfg.alpha,
    )


def select_pivot(state: EliminationState, cfg: StabilityConfig,
                 trace: Optional[List[int]] = None) -> PivotResult:
    """
    Pick the next pivot.

    Columns are tried by increasing degree. The first column whose diagonal
    passes the 1-by-1 test is used; otherwise its neighbours are tried as
    2-by-2 partners by increasing pair degree. A column whose partners all
    fail leaves the candidate set and the next column is tried. Columns
    visited are appended to ``trace`` when given.
    """
    remaining = state.remaining
    for i in state.minimum_degree_order():
        if trace is not None:
            trace.append(i)
        if accept_1x1(state, i, cfg):
            return PivotChoice.one_by_one(i, remaining.diag(i))

        partners = sorted(candidate_set(state, i), key=lambda z: (pair_degree(state, i, z), z))
        for j in partners:
            if accept_2x2(state, i, j, cfg):
                return PivotChoice.two_by_two(
                    i, j, remaining.diag(i), remaining.get(i, j), remaining.diag(j)
                )
        logger.debug("column %d rejected with %d partners", i, len(partners))
    return NO_PIVOT


def update_after_elimination(state: EliminationState, pivot: PivotChoice,
                             new_remaining: LiveSubmatrix,
                             touched: Optional[Iterable[int]] = None) -> EliminationState:
    """
    Drop the pivot columns from the active set and refresh degrees.

    ``touched`` lists the columns adjacent to the pivot; when omitted every
    active column is recounted.
    """
    state.remaining = new_remaining
    for c in pivot.columns:
        state.active.discard(c)
        state.degree.pop(c, None)
    state.eliminated += pivot.size

    targets = state.active if touched is None else [t for t in touched if t in state.active]
    for t in targets:
        state.degree[t] = new_remaining.offdiag_count(t)
    return state

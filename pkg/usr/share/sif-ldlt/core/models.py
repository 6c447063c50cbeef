"""
SIF Data Models
Symmetric sparse matrices, permutations, block diagonals and factor containers
"""

import math
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .exceptions import (
    AsymmetryError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidOptionError,
)

# Classical Bunch-Kaufman growth constant (1 + sqrt(17)) / 8
BK_CONSTANT = (1.0 + math.sqrt(17.0)) / 8.0

DEFAULT_ALPHA = 0.01

Triplet = Tuple[int, int, float]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class SymmetricSparseMatrix:
    """Immutable symmetric matrix stored column by column, both triangles present"""

    __slots__ = ('n', 'nnz', '_rows', '_vals')

    def __init__(self, n: int, rows: Sequence[np.ndarray], vals: Sequence[np.ndarray]):
        if len(rows) != n or len(vals) != n:
            raise DimensionMismatchError(f"expected {n} columns, got {len(rows)}")
        self.n = n
        self._rows = tuple(_frozen(np.asarray(r, dtype=np.int64)) for r in rows)
        self._vals = tuple(_frozen(np.asarray(v, dtype=np.float64)) for v in vals)
        self.nnz = int(sum(r.size for r in self._rows))

    @classmethod
    def from_columns(cls, n: int, columns: Dict[int, Dict[int, float]]) -> 'SymmetricSparseMatrix':
        """Build from {column: {row: value}}; zeros are dropped, symmetry is trusted"""
        rows: List[np.ndarray] = []
        vals: List[np.ndarray] = []
        for j in range(n):
            col = columns.get(j, {})
            keys = sorted(r for r, v in col.items() if v != 0.0)
            rows.append(np.array(keys, dtype=np.int64))
            vals.append(np.array([col[r] for r in keys], dtype=np.float64))
        return cls(n, rows, vals)

    @classmethod
    def from_dense(cls, values) -> 'SymmetricSparseMatrix':
        """Build from a square array that must be exactly symmetric"""
        a = np.asarray(values, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise AsymmetryError("dense matrix is not symmetric")
        n = a.shape[0]
        rows = [np.flatnonzero(a[:, j]) for j in range(n)]
        vals = [a[r, j] for j, r in enumerate(rows)]
        return cls(n, rows, vals)

    @classmethod
    def from_scipy(cls, matrix) -> 'SymmetricSparseMatrix':
        """Build from any scipy sparse matrix; duplicates are summed"""
        coo = sp.coo_matrix(matrix)
        if coo.shape[0] != coo.shape[1]:
            raise DimensionMismatchError(f"matrix must be square, got shape {coo.shape}")
        entries = zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())
        return build_from_triplets(coo.shape[0], entries)

    def column(self, j: int) -> Tuple[np.ndarray, np.ndarray]:
        """Row indices and values of column j (read-only views)"""
        return self._rows[j], self._vals[j]

    def get(self, i: int, j: int) -> float:
        rows = self._rows[j]
        pos = int(np.searchsorted(rows, i))
        if pos < rows.size and rows[pos] == i:
            return float(self._vals[j][pos])
        return 0.0

    def offdiag_count(self, j: int) -> int:
        rows = self._rows[j]
        pos = int(np.searchsorted(rows, j))
        on_diag = pos < rows.size and rows[pos] == j
        return int(rows.size) - int(on_diag)

    def triplets(self) -> Iterator[Triplet]:
        """Yield (row, column, value) in column-major order"""
        for j in range(self.n):
            for i, v in zip(self._rows[j].tolist(), self._vals[j].tolist()):
                yield i, j, v

    def lower_triplets(self) -> Iterator[Triplet]:
        for i, j, v in self.triplets():
            if i >= j:
                yield i, j, v

    def frobenius_norm(self) -> float:
        return float(math.sqrt(math.fsum(float(v) ** 2 for vals in self._vals for v in vals)))

    def to_scipy(self) -> sp.csc_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([r.size for r in self._rows])
        indices = np.concatenate(self._rows) if self.n else np.zeros(0, dtype=np.int64)
        data = np.concatenate(self._vals) if self.n else np.zeros(0)
        return sp.csc_matrix((data, indices, indptr), shape=(self.n, self.n))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        for j in range(self.n):
            out[self._rows[j], j] = self._vals[j]
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricSparseMatrix) or other.n != self.n:
            return False
        return all(
            np.array_equal(r1, r2) and np.array_equal(v1, v2)
            for r1, r2, v1, v2 in zip(self._rows, other._rows, self._vals, other._vals)
        )

    def __hash__(self):
        return hash((self.n, self.nnz))

    def __repr__(self) -> str:
        return f"SymmetricSparseMatrix(n={self.n}, nnz={self.nnz})"


def build_from_triplets(n: int, entries: Iterable[Triplet]) -> SymmetricSparseMatrix:
    """
    Assemble a symmetric matrix from (i, j, value) triplets.

    Repeated (i, j) keys are summed. A key given in one orientation only is
    mirrored; a key given in both orientations must carry equal sums.
    """
    if n < 0:
        raise InvalidOptionError(f"dimension must be non-negative, got {n}")

    grouped: Dict[Tuple[int, int], List[float]] = {}
    for i, j, value in entries:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRangeError(f"entry ({i}, {j}) outside [0, {n})")
        grouped.setdefault((i, j), []).append(float(value))

    # fsum keeps the result independent of triplet order
    sums = {key: math.fsum(values) for key, values in grouped.items()}

    columns: Dict[int, Dict[int, float]] = {}
    for (i, j), value in sums.items():
        if i != j:
            mirror = sums.get((j, i))
            if mirror is not None and mirror != value:
                raise AsymmetryError(
                    f"entries ({i}, {j}) = {value!r} and ({j}, {i}) = {mirror!r} differ"
                )
        if value == 0.0:
            continue
        columns.setdefault(j, {})[i] = value
        columns.setdefault(i, {})[j] = value

    return SymmetricSparseMatrix.from_columns(n, columns)


def offdiag_count(m: SymmetricSparseMatrix, j: int) -> int:
    """Number of stored entries of column j off the diagonal"""
    if not 0 <= j < m.n:
        raise IndexOutOfRangeError(f"column {j} outside [0, {m.n})")
    return m.offdiag_count(j)


class Permutation:
    """
    Bijection on [0, n).

    ``inverse[k]`` is the original index placed at position k and
    ``forward[i]`` is the position of original index i, so that the permuted
    matrix satisfies (P^T A P)[k, l] = A[inverse[k], inverse[l]].
    """

    __slots__ = ('forward', 'inverse')

    def __init__(self, inverse: Sequence[int]):
        inv = np.asarray(inverse, dtype=np.int64).reshape(-1)
        n = inv.size
        if n and (inv.min() < 0 or inv.max() >= n or np.unique(inv).size != n):
            raise InvalidOptionError("permutation is not a bijection on [0, n)")
        fwd = np.empty(n, dtype=np.int64)
        fwd[inv] = np.arange(n, dtype=np.int64)
        self.inverse = _frozen(inv.copy())
        self.forward = _frozen(fwd)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(np.arange(n))

    @classmethod
    def from_forward(cls, forward: Sequence[int]) -> 'Permutation':
        return cls(Permutation(forward).forward)

    @property
    def n(self) -> int:
        return int(self.inverse.size)

    def inverted(self) -> 'Permutation':
        return Permutation(self.forward)

    def to_list(self) -> List[int]:
        return self.inverse.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.inverse, other.inverse)

    def __hash__(self):
        return hash(tuple(self.inverse.tolist()))

    def __repr__(self) -> str:
        return f"Permutation({self.inverse.tolist()})"


def apply_permutation(m: SymmetricSparseMatrix, p: Permutation) -> SymmetricSparseMatrix:
    """Return P^T m P, i.e. result[i, j] = m[inverse[i], inverse[j]]"""
    if p.n != m.n:
        raise DimensionMismatchError(f"permutation of size {p.n} for matrix of size {m.n}")
    rows: List[np.ndarray] = []
    vals: List[np.ndarray] = []
    for k in range(m.n):
        src_rows, src_vals = m.column(int(p.inverse[k]))
        new_rows = p.forward[src_rows]
        order = np.argsort(new_rows, kind='stable')
        rows.append(new_rows[order])
        vals.append(src_vals[order])
    return SymmetricSparseMatrix(m.n, rows, vals)


class ScalarBlock:
    """1-by-1 pivot block"""

    size = 1

    def __init__(self, value: float):
        self.value = float(value)

    def solve(self, z: np.ndarray) -> np.ndarray:
        return z / self.value

    def to_array(self) -> np.ndarray:
        return np.array([[self.value]])

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarBlock) and self.value == other.value

    def __hash__(self):
        return hash((1, self.value))

    def __repr__(self) -> str:
        return f"ScalarBlock({self.value!r})"


class PairBlock:
    """Symmetric 2-by-2 pivot block with its cached reciprocal determinant"""

    size = 2

    def __init__(self, b11: float, b12: float, b22: float):
        self.b11 = float(b11)
        self.b12 = float(b12)
        self.b22 = float(b22)
        det = self.determinant
        if det == 0.0:
            raise ArithmeticError("2x2 pivot block is singular")
        self.inv_det = 1.0 / det

    @property
    def determinant(self) -> float:
        return self.b11 * self.b22 - self.b12 * self.b12

    def solve(self, z: np.ndarray) -> np.ndarray:
        # Cramer's rule
        return np.array([
            (self.b22 * z[0] - self.b12 * z[1]) * self.inv_det,
            (self.b11 * z[1] - self.b12 * z[0]) * self.inv_det,
        ])

    def to_array(self) -> np.ndarray:
        return np.array([[self.b11, self.b12], [self.b12, self.b22]])

    def __eq__(self, other) -> bool:
        return (isinstance(other, PairBlock)
                and (self.b11, self.b12, self.b22) == (other.b11, other.b12, other.b22))

    def __hash__(self):
        return hash((2, self.b11, self.b12, self.b22))

    def __repr__(self) -> str:
        return f"PairBlock({self.b11!r}, {self.b12!r}, {self.b22!r})"


Block = Union[ScalarBlock, PairBlock]


class BlockDiagonal:
    """Ordered sequence of 1-by-1 and 2-by-2 blocks"""

    def __init__(self, blocks: Iterable[Block] = ()):
        self.blocks: Tuple[Block, ...] = tuple(blocks)
        starts = []
        pos = 0
        for block in self.blocks:
            starts.append(pos)
            pos += block.size
        self.starts: Tuple[int, ...] = tuple(starts)
        self.dim = pos

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def count(self, size: int) -> int:
        return sum(1 for b in self.blocks if b.size == size)

    def solve(self, z: np.ndarray) -> np.ndarray:
        if z.shape[0] != self.dim:
            raise DimensionMismatchError(f"vector of length {z.shape[0]} for block dimension {self.dim}")
        out = np.empty_like(z, dtype=np.float64)
        for start, block in zip(self.starts, self.blocks):
            out[start:start + block.size] = block.solve(z[start:start + block.size])
        return out

    def to_scipy(self) -> sp.csc_matrix:
        if not self.blocks:
            return sp.csc_matrix((0, 0))
        return sp.block_diag([b.to_array() for b in self.blocks], format='csc')


class SparseLowerTriangular:
    """Strictly lower part of a unit lower triangular matrix in compressed columns"""

    def __init__(self, n: int, indptr, indices, data):
        self.n = n
        self.indptr = _frozen(np.asarray(indptr, dtype=np.int64))
        self.indices = _frozen(np.asarray(indices, dtype=np.int64))
        self.data = _frozen(np.asarray(data, dtype=np.float64))
        if self.indptr.size != n + 1:
            raise DimensionMismatchError("indptr length must be n + 1")
        for k in range(n):
            rows = self.indices[self.indptr[k]:self.indptr[k + 1]]
            if rows.size and (rows[0] <= k or np.any(np.diff(rows) <= 0)):
                raise InvalidOptionError(f"column {k} of L is not strictly lower or not sorted")

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[Tuple[np.ndarray, np.ndarray]]) -> 'SparseLowerTriangular':
        indptr = [0]
        indices: List[np.ndarray] = []
        data: List[np.ndarray] = []
        for rows, vals in columns:
            keep = vals != 0.0
            rows, vals = np.asarray(rows)[keep], np.asarray(vals)[keep]
            order = np.argsort(rows, kind='stable')
            indices.append(rows[order])
            data.append(vals[order])
            indptr.append(indptr[-1] + rows.size)
        return cls(
            n,
            indptr,
            np.concatenate(indices) if indices else np.zeros(0, dtype=np.int64),
            np.concatenate(data) if data else np.zeros(0),
        )

    @property
    def nnz(self) -> int:
        return int(self.data.size)

    def column(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[k], self.indptr[k + 1]
        return self.indices[lo:hi], self.data[lo:hi]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def to_scipy(self, unit_diagonal: bool = True) -> sp.csc_matrix:
        strict = sp.csc_matrix((self.data, self.indices, self.indptr), shape=(self.n, self.n))
        if unit_diagonal:
            return (strict + sp.identity(self.n, format='csc')).tocsc()
        return strict


class Factorization:
    """P^T A P = L B L^T"""

    def __init__(self, perm: Permutation, L: SparseLowerTriangular, B: BlockDiagonal):
        if not (perm.n == L.n == B.dim):
            raise DimensionMismatchError(
                f"inconsistent factor sizes: P={perm.n}, L={L.n}, B={B.dim}"
            )
        self.perm = perm
        self.L = L
        self.B = B

    @property
    def n(self) -> int:
        return self.perm.n

    def product(self) -> sp.csc_matrix:
        """L B L^T as a sparse matrix"""
        L = self.L.to_scipy()
        return (L @ self.B.to_scipy() @ L.T).tocsc()

    def __repr__(self) -> str:
        return f"Factorization(n={self.n}, nnz_L={self.L.nnz}, blocks={len(self.B)})"


class PivotKind(Enum):
    """Sizes of pivot blocks"""
    ONE_BY_ONE = 1
    TWO_BY_TWO = 2


class PivotChoice:
    """
    A selected pivot.

    ``columns`` holds one index for a 1-by-1 pivot and the ordered pair
    (i, j) for a 2-by-2 pivot; ``values`` holds (a_ii,) or (a_ii, a_ij, a_jj).
    """

    def __init__(self, kind: PivotKind, columns: Tuple[int, ...], values: Tuple[float, ...]):
        self.kind = kind
        self.columns = tuple(int(c) for c in columns)
        self.values = tuple(float(v) for v in values)

    @classmethod
    def one_by_one(cls, i: int, a_ii: float) -> 'PivotChoice':
        return cls(PivotKind.ONE_BY_ONE, (i,), (a_ii,))

    @classmethod
    def two_by_two(cls, i: int, j: int, a_ii: float, a_ij: float, a_jj: float) -> 'PivotChoice':
        return cls(PivotKind.TWO_BY_TWO, (i, j), (a_ii, a_ij, a_jj))

    @property
    def size(self) -> int:
        return self.kind.value

    def block(self) -> Block:
        if self.kind is PivotKind.ONE_BY_ONE:
            return ScalarBlock(self.values[0])
        return PairBlock(*self.values)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PivotChoice) and self.kind is other.kind
                and self.columns == other.columns and self.values == other.values)

    def __hash__(self):
        return hash((self.kind, self.columns, self.values))

    def __repr__(self) -> str:
        return f"PivotChoice({self.kind.name}, columns={self.columns}, values={self.values})"


class NoPivotType:
    """Sentinel returned when no acceptable pivot exists"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return 'NoPivot'


NO_PIVOT = NoPivotType()

PivotResult = Union[PivotChoice, NoPivotType]


class StabilityConfig:
    """Threshold alpha of the stability tests and the dense-phase growth constant"""

    def __init__(self, alpha: float = DEFAULT_ALPHA, bk_constant: float = BK_CONSTANT):
        alpha = float(alpha)
        if not 0.0 < alpha <= 0.5:
            raise InvalidOptionError(f"alpha must lie in (0, 0.5], got {alpha}")
        if not 0.0 < bk_constant < 1.0:
            raise InvalidOptionError(f"Bunch-Kaufman constant must lie in (0, 1), got {bk_constant}")
        self.alpha = alpha
        self.bk_constant = float(bk_constant)

    @property
    def bound(self) -> float:
        """Largest admissible |L_ij|"""
        return 1.0 / self.alpha

    def to_dict(self) -> Dict[str, float]:
        return {'alpha': self.alpha, 'bk_constant': self.bk_constant}

    def __repr__(self) -> str:
        return f"StabilityConfig(alpha={self.alpha})"


class FactorizeOptions:
    """Options of a factorization run"""

    def __init__(self, stability: Optional[StabilityConfig] = None,
                 dense_switch_density: float = 1.0, dense_switch_min_dim: int = 0):
        dense_switch_density = float(dense_switch_density)
        # 0 sends the whole matrix through the dense phase
        if not 0.0 <= dense_switch_density <= 1.0:
            raise InvalidOptionError(
                f"dense switch density must lie in [0, 1], got {dense_switch_density}"
            )
        if dense_switch_min_dim < 0:
            raise InvalidOptionError(f"dense switch dimension must be >= 0, got {dense_switch_min_dim}")
        self.stability = stability or StabilityConfig()
        self.dense_switch_density = dense_switch_density
        self.dense_switch_min_dim = int(dense_switch_min_dim)

    def to_dict(self) -> Dict[str, float]:
        data = self.stability.to_dict()
        data.update({
            'dense_switch_density': self.dense_switch_density,
            'dense_switch_min_dim': self.dense_switch_min_dim,
        })
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, float]) -> 'FactorizeOptions':
        return cls(
            StabilityConfig(data.get('alpha', DEFAULT_ALPHA), data.get('bk_constant', BK_CONSTANT)),
            data.get('dense_switch_density', 1.0),
            int(data.get('dense_switch_min_dim', 0)),
        )


class FactorizeStats:
    """Counters collected while factorizing"""

    def __init__(self, n: int, alpha: float):
        self.n = n
        self.alpha = alpha
        self.nnz_L = n
        self.num_1x1 = 0
        self.num_2x2 = 0
        self.dense_1x1 = 0
        self.dense_2x2 = 0
        self.dense_switch_at: Optional[int] = None
        self.max_abs_L = 0.0

    @property
    def dense_dim(self) -> int:
        return self.dense_1x1 + 2 * self.dense_2x2

    @property
    def total_1x1(self) -> int:
        return self.num_1x1 + self.dense_1x1

    @property
    def total_2x2(self) -> int:
        return self.num_2x2 + self.dense_2x2

    def to_dict(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'alpha': self.alpha,
            'nnz_L': self.nnz_L,
            'num_1x1': self.num_1x1,
            'num_2x2': self.num_2x2,
            'dense_1x1': self.dense_1x1,
            'dense_2x2': self.dense_2x2,
            'dense_switch_at': self.dense_switch_at,
            'max_abs_L': self.max_abs_L,
        }

    def __repr__(self) -> str:
        return f"FactorizeStats({self.to_dict()})"


class GenSpec:
    """Recipe for a random symmetric indefinite instance"""

    def __init__(self, n: int, density: float, seed: int,
                 value_low: float = -1.0, value_high: float = 1.0, full_structural_rank: bool = True):
        if n < 1:
            raise InvalidOptionError(f"n must be >= 1, got {n}")
        if not 0.0 < density <= 1.0:
            raise InvalidOptionError(f"density must lie in (0, 1], got {density}")
        if not value_low < value_high:
            raise InvalidOptionError("value range is empty")
        self.n = int(n)
        self.density = float(density)
        self.seed = int(seed)
        self.value_low = float(value_low)
        self.value_high = float(value_high)
        self.full_structural_rank = bool(full_structural_rank)

    @property
    def target_nnz(self) -> int:
        return int(round(self.density * self.n * self.n))

    def to_dict(self) -> Dict[str, float]:
        return {
            'n': self.n,
            'density': self.density,
            'seed': self.seed,
            'value_low': self.value_low,
            'value_high': self.value_high,
            'full_structural_rank': self.full_structural_rank,
        }


class BenchRow:
    """Result of one benchmark instance"""

    FIELDS = ('n', 'density', 'alpha', 'instance', 'seed', 'fill_pct_L', 'residual',
              'num_1x1', 'num_2x2', 'dense_switch_at', 'max_abs_L')

    def __init__(self, n: int, density: float, alpha: float, instance: int, seed: int,
                 fill_pct_L: float, residual: float, num_1x1: int, num_2x2: int,
                 dense_switch_at: Optional[int], max_abs_L: float, wall_time: float = 0.0,
                 md_fill_pct: Optional[float] = None):
        self.n = n
        self.density = density
        self.alpha = alpha
        self.instance = instance
        self.seed = seed
        self.fill_pct_L = fill_pct_L
        self.residual = residual
        self.num_1x1 = num_1x1
        self.num_2x2 = num_2x2
        self.dense_switch_at = dense_switch_at
        self.max_abs_L = max_abs_L
        self.wall_time = wall_time
        self.md_fill_pct = md_fill_pct

    @property
    def cell(self) -> Tuple[int, float, float]:
        return self.n, self.density, self.alpha

    def to_dict(self) -> Dict[str, object]:
        data = {name: getattr(self, name) for name in self.FIELDS}
        data['wall_time'] = self.wall_time
        data['md_fill_pct'] = self.md_fill_pct
        return data


class BenchAggregate:
    """Means over the instances of one (n, density, alpha) cell"""

    def __init__(self, n: int, density: float, alpha: float, rows: Sequence[BenchRow]):
        self.n = n
        self.density = density
        self.alpha = alpha
        self.count = len(rows)
        self.fill_pct_L = math.fsum(r.fill_pct_L for r in rows) / self.count
        self.residual = math.fsum(r.residual for r in rows) / self.count
        self.wall_time = math.fsum(r.wall_time for r in rows) / self.count
        md = [r.md_fill_pct for r in rows if r.md_fill_pct is not None]
        self.md_fill_pct = math.fsum(md) / len(md) if md else None


class BenchReport:
    """Per-instance rows of a sweep plus the configuration that produced them"""

    RESIDUAL_NORM = 'frobenius'
    FILL_FORMULA = '100*(nnz_strict_lower(L)+n)/n^2'
    GENERATOR = ('uniform symmetric pairs, values uniform in [low, high], diagonal inside density budget, '
                 'pattern redrawn until structurally nonsingular')

    def __init__(self, config: Dict[str, object], rows: Sequence[BenchRow]):
        self.config = dict(config)
        self.rows: List[BenchRow] = list(rows)

    def cells(self) -> List[Tuple[int, float, float]]:
        seen: List[Tuple[int, float, float]] = []
        for row in self.rows:
            if row.cell not in seen:
                seen.append(row.cell)
        return seen

    def aggregates(self) -> List[BenchAggregate]:
        return [
            BenchAggregate(*cell, [r for r in self.rows if r.cell == cell])
            for cell in self.cells()
        ]

    def mean_fill(self) -> float:
        return math.fsum(r.fill_pct_L for r in self.rows) / len(self.rows)

    def mean_residual(self) -> float:
        return math.fsum(r.residual for r in self.rows) / len(self.rows)

"""
Tests for the matrix, permutation and block containers
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from core.exceptions import (
    AsymmetryError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidOptionError,
)
from core.models import (
    NO_PIVOT,
    BenchReport,
    BenchRow,
    BlockDiagonal,
    FactorizeOptions,
    GenSpec,
    PairBlock,
    Permutation,
    PivotChoice,
    PivotKind,
    ScalarBlock,
    SparseLowerTriangular,
    StabilityConfig,
    SymmetricSparseMatrix,
    apply_permutation,
    build_from_triplets,
    offdiag_count,
)
from strategies import integer_symmetric


class TestBuildFromTriplets:

    def test_single_orientation_is_mirrored(self):
        m = build_from_triplets(3, [(0, 0, 2.0), (2, 0, -1.5)])
        assert m.get(2, 0) == -1.5
        assert m.get(0, 2) == -1.5
        assert m.nnz == 3

    def test_duplicates_are_summed(self):
        m = build_from_triplets(2, [(1, 0, 1.0), (1, 0, 2.0), (0, 1, 3.0)])
        assert m.get(0, 1) == 3.0

    def test_mismatched_mirror_raises(self):
        with pytest.raises(AsymmetryError):
            build_from_triplets(2, [(0, 1, 1.0), (1, 0, 2.0)])

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            build_from_triplets(2, [(2, 0, 1.0)])
        with pytest.raises(IndexOutOfRangeError):
            build_from_triplets(2, [(0, -1, 1.0)])

    def test_zero_sums_are_dropped(self):
        m = build_from_triplets(2, [(0, 1, 1.0), (0, 1, -1.0), (1, 1, 4.0)])
        assert m.nnz == 1
        assert m.offdiag_count(0) == 0

    def test_empty_matrix(self):
        m = build_from_triplets(0, [])
        assert m.n == 0
        assert m.nnz == 0

    def test_negative_dimension(self):
        with pytest.raises(InvalidOptionError):
            build_from_triplets(-1, [])


class TestSymmetricSparseMatrix:

    def test_from_dense_rejects_asymmetry(self):
        with pytest.raises(AsymmetryError):
            SymmetricSparseMatrix.from_dense([[1.0, 2.0], [3.0, 1.0]])

    def test_from_dense_rejects_rectangular(self):
        with pytest.raises(DimensionMismatchError):
            SymmetricSparseMatrix.from_dense(np.zeros((2, 3)))

    def test_columns_are_read_only(self):
        m = SymmetricSparseMatrix.from_dense([[1.0, 2.0], [2.0, 0.0]])
        rows, vals = m.column(0)
        with pytest.raises(ValueError):
            vals[0] = 5.0

    def test_offdiag_count(self, arrow):
        assert offdiag_count(arrow, 0) == 5
        assert offdiag_count(arrow, 3) == 1
        with pytest.raises(IndexOutOfRangeError):
            offdiag_count(arrow, 6)

    def test_frobenius_norm(self):
        m = SymmetricSparseMatrix.from_dense([[3.0, 0.0], [0.0, -4.0]])
        assert m.frobenius_norm() == 5.0

    @given(integer_symmetric())
    def test_dense_round_trip_through_scipy(self, m):
        assert np.array_equal(m.to_scipy().toarray(), m.to_dense())
        assert SymmetricSparseMatrix.from_scipy(m.to_scipy()) == m

    @given(integer_symmetric())
    def test_lower_triplets_rebuild_matrix(self, m):
        assert build_from_triplets(m.n, m.lower_triplets()) == m


class TestPermutation:

    def test_forward_inverts_inverse(self):
        p = Permutation([2, 0, 1])
        assert p.forward.tolist() == [1, 2, 0]
        assert p.inverted() == Permutation([1, 2, 0])
        assert Permutation.from_forward([1, 2, 0]) == p

    def test_rejects_non_bijection(self):
        with pytest.raises(InvalidOptionError):
            Permutation([0, 0, 1])
        with pytest.raises(InvalidOptionError):
            Permutation([0, 3, 1])

    def test_identity(self):
        assert Permutation.identity(4).to_list() == [0, 1, 2, 3]

    @given(integer_symmetric(min_n=2), st.randoms(use_true_random=False))
    def test_apply_matches_dense_indexing(self, m, rnd):
        order = list(range(m.n))
        rnd.shuffle(order)
        p = Permutation(order)
        dense = m.to_dense()
        assert np.array_equal(apply_permutation(m, p).to_dense(), dense[np.ix_(order, order)])

    def test_apply_size_mismatch(self, arrow):
        with pytest.raises(DimensionMismatchError):
            apply_permutation(arrow, Permutation.identity(3))


class TestBlocks:

    def test_pair_block_solve(self):
        block = PairBlock(0.0, 1.0, 0.0)
        assert block.determinant == -1.0
        assert block.solve(np.array([3.0, 5.0])).tolist() == [5.0, 3.0]

    def test_singular_pair_block(self):
        with pytest.raises(ArithmeticError):
            PairBlock(1.0, 1.0, 1.0)

    def test_block_diagonal_layout(self):
        b = BlockDiagonal([ScalarBlock(2.0), PairBlock(1.0, 2.0, -1.0), ScalarBlock(-4.0)])
        assert b.starts == (0, 1, 3)
        assert b.dim == 4
        assert b.count(1) == 2
        assert b.count(2) == 1
        z = np.array([2.0, 1.0, 2.0, 8.0])
        x = b.solve(z)
        assert np.allclose(b.to_scipy().toarray() @ x, z)

    def test_block_diagonal_dimension_check(self):
        with pytest.raises(DimensionMismatchError):
            BlockDiagonal([ScalarBlock(1.0)]).solve(np.zeros(2))


class TestSparseLowerTriangular:

    def test_from_columns_sorts_and_drops_zeros(self):
        L = SparseLowerTriangular.from_columns(3, [
            (np.array([2, 1]), np.array([0.5, 0.0])),
            (np.array([2]), np.array([-1.0])),
            (np.array([], dtype=np.int64), np.array([])),
        ])
        assert L.nnz == 2
        assert L.column(0)[0].tolist() == [2]
        assert L.max_abs() == 1.0
        dense = L.to_scipy().toarray()
        assert np.array_equal(np.diag(dense), np.ones(3))

    def test_rejects_upper_entries(self):
        with pytest.raises(InvalidOptionError):
            SparseLowerTriangular(2, [0, 1, 1], [0], [1.0])


class TestPivotModels:

    def test_no_pivot_is_falsy_singleton(self):
        assert not NO_PIVOT
        assert type(NO_PIVOT)() is NO_PIVOT
        assert repr(NO_PIVOT) == 'NoPivot'

    def test_choice_blocks(self):
        one = PivotChoice.one_by_one(3, -2.0)
        two = PivotChoice.two_by_two(1, 4, 0.0, 1.0, 0.0)
        assert one.size == 1 and one.kind is PivotKind.ONE_BY_ONE
        assert two.size == 2 and two.columns == (1, 4)
        assert isinstance(one.block(), ScalarBlock)
        assert isinstance(two.block(), PairBlock)


class TestOptions:

    @pytest.mark.parametrize('alpha', [0.0, -0.1, 0.51, 1.0])
    def test_alpha_range(self, alpha):
        with pytest.raises(InvalidOptionError):
            StabilityConfig(alpha)

    def test_alpha_half_is_allowed(self):
        assert StabilityConfig(0.5).bound == 2.0

    def test_dense_switch_range(self):
        with pytest.raises(InvalidOptionError):
            FactorizeOptions(dense_switch_density=1.5)
        with pytest.raises(InvalidOptionError):
            FactorizeOptions(dense_switch_min_dim=-1)

    def test_options_dict_round_trip(self):
        opts = FactorizeOptions(StabilityConfig(0.1), 0.8, 5)
        again = FactorizeOptions.from_dict(opts.to_dict())
        assert again.to_dict() == opts.to_dict()

    def test_gen_spec_validation(self):
        with pytest.raises(InvalidOptionError):
            GenSpec(0, 0.5, 1)
        with pytest.raises(InvalidOptionError):
            GenSpec(10, 0.0, 1)
        with pytest.raises(InvalidOptionError):
            GenSpec(10, 0.5, 1, 1.0, -1.0)
        assert GenSpec(10, 0.3, 1).target_nnz == 30


class TestBenchReport:

    def _row(self, instance, fill):
        return BenchRow(10, 0.3, 0.01, instance, 100 + instance, fill, 1e-15, 8, 1, None, 2.0)

    def test_single_instance_aggregate_equals_row(self):
        report = BenchReport({}, [self._row(0, 42.0)])
        (agg,) = report.aggregates()
        assert agg.count == 1
        assert agg.fill_pct_L == 42.0
        assert agg.residual == 1e-15

    def test_means(self):
        report = BenchReport({}, [self._row(0, 40.0), self._row(1, 50.0)])
        assert report.cells() == [(10, 0.3, 0.01)]
        assert report.mean_fill() == 45.0
        assert report.mean_residual() == 1e-15
        assert report.aggregates()[0].md_fill_pct is None

"""
Tests for the symbolic minimum degree baseline
"""

import numpy as np
import pytest
from hypothesis import given

from core.exceptions import DimensionMismatchError
from core.models import Permutation, SymmetricSparseMatrix
from core.ordering import minimum_degree_ordering, ordering_fill_percentage, symbolic_fill
from strategies import generated_matrices


def star(n):
    a = np.eye(n)
    a[0, 1:] = a[1:, 0] = 1.0
    return SymmetricSparseMatrix.from_dense(a)


def tridiagonal(n):
    return SymmetricSparseMatrix.from_dense(
        np.diag(np.full(n, 2.0)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    )


def test_star_center_goes_late():
    m = star(7)
    p = minimum_degree_ordering(m)
    assert p.to_list().index(0) == 5
    assert symbolic_fill(m, p) == 2 * 7 - 1


def test_star_center_first_fills_everything():
    m = star(7)
    assert symbolic_fill(m, Permutation.identity(7)) == 7 * 8 // 2


def test_tridiagonal_has_no_fill():
    m = tridiagonal(9)
    assert symbolic_fill(m, minimum_degree_ordering(m)) == 9 + 8


def test_diagonal_fill_percentage():
    assert ordering_fill_percentage(SymmetricSparseMatrix.from_dense(np.eye(4))) == 25.0


def test_size_mismatch():
    with pytest.raises(DimensionMismatchError):
        symbolic_fill(star(4), Permutation.identity(3))


@given(generated_matrices(max_n=30))
def test_ordering_is_a_permutation_and_fill_is_bounded(m):
    p = minimum_degree_ordering(m)
    assert sorted(p.to_list()) == list(range(m.n))
    diag = int(np.count_nonzero(np.diag(m.to_dense())))
    strict_lower = (m.nnz - diag) // 2
    fill = symbolic_fill(m, p)
    assert m.n + strict_lower <= fill <= m.n * (m.n + 1) // 2

"""
SIF Minimum Degree Ordering
Symbolic minimum degree on the elimination graph, used as a fill-in baseline
"""

from typing import Dict, List, Set

from .exceptions import DimensionMismatchError
from .models import Permutation, SymmetricSparseMatrix


def _adjacency(m: SymmetricSparseMatrix) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {}
    for j in range(m.n):
        rows, _ = m.column(j)
        adj[j] = set(rows.tolist())
        adj[j].discard(j)
    return adj


def _eliminate_vertex(adj: Dict[int, Set[int]], v: int) -> int:
    """Remove v and make its neighbours a clique; returns deg(v)"""
    nbrs = adj.pop(v)
    for u in nbrs:
        adj[u].discard(v)
        adj[u].update(nbrs)
        adj[u].discard(u)
    return len(nbrs)


def minimum_degree_ordering(m: SymmetricSparseMatrix) -> Permutation:
    """Vertices in the order the minimum degree rule eliminates them (ties: smallest index)"""
    adj = _adjacency(m)
    order: List[int] = []
    while adj:
        v = min(adj, key=lambda j: (len(adj[j]), j))
        _eliminate_vertex(adj, v)
        order.append(v)
    return Permutation(order)


def symbolic_fill(m: SymmetricSparseMatrix, p: Permutation) -> int:
    """nnz of the unit lower factor of P^T m P with 1-by-1 pivots and no cancellation"""
    if p.n != m.n:
        raise DimensionMismatchError(f"permutation of size {p.n} for matrix of size {m.n}")
    adj = _adjacency(m)
    return m.n + sum(_eliminate_vertex(adj, int(v)) for v in p.inverse)


def ordering_fill_percentage(m: SymmetricSparseMatrix) -> float:
    return 100.0 * symbolic_fill(m, minimum_degree_ordering(m)) / float(m.n * m.n)

"""
SIF Solver
Forward and back substitution with a computed factorization
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from .exceptions import DimensionMismatchError
from .models import Factorization


def solve(f: Factorization, b: Sequence[float]) -> np.ndarray:
    """
    Solve A x = b.

    (i) L z = P^T b, (ii) B zh = z, (iii) L^T zb = zh, (iv) x = P zb.
    """
    b = np.asarray(b, dtype=np.float64)
    n = f.n
    if b.shape != (n,):
        raise DimensionMismatchError(f"right-hand side of shape {b.shape} for n={n}")

    indptr, indices, data = f.L.indptr, f.L.indices, f.L.data
    z = b[f.perm.inverse].copy()

    for k in range(n):
        lo, hi = indptr[k], indptr[k + 1]
        if lo != hi and z[k] != 0.0:
            z[indices[lo:hi]] -= data[lo:hi] * z[k]

    z = f.B.solve(z)

    for k in range(n - 1, -1, -1):
        lo, hi = indptr[k], indptr[k + 1]
        if lo != hi:
            z[k] -= np.dot(data[lo:hi], z[indices[lo:hi]])

    x = np.empty(n)
    x[f.perm.inverse] = z
    return x


def solve_many(f: Factorization, rhs: Sequence[Sequence[float]],
               workers: Optional[int] = None) -> List[np.ndarray]:
    """Solve for several right-hand sides; results keep the input order"""
    rhs = list(rhs)
    for b in rhs:
        if np.shape(b) != (f.n,):
            raise DimensionMismatchError(f"right-hand side of shape {np.shape(b)} for n={f.n}")
    if not workers or workers <= 1 or len(rhs) <= 1:
        return [solve(f, b) for b in rhs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: solve(f, b), rhs))


def relative_residual(A, x: np.ndarray, b: np.ndarray) -> float:
    """||A x - b||_2 / ||b||_2 (plain ||A x|| when b is zero)"""
    b = np.asarray(b, dtype=np.float64)
    r = A.to_scipy() @ x - b
    nb = float(np.linalg.norm(b))
    return float(np.linalg.norm(r)) / nb if nb else float(np.linalg.norm(r))

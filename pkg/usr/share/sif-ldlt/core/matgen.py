"""
SIF Instance Generator and Metrics
Random symmetric indefinite instances, fill percentage and reconstruction residual
"""

import logging

import numpy as np
import scipy.sparse.linalg as spla
from scipy.sparse.csgraph import structural_rank

from .exceptions import DimensionMismatchError
from .models import Factorization, GenSpec, SymmetricSparseMatrix, apply_permutation, build_from_triplets

logger = logging.getLogger(__name__)

MAX_PATTERN_DRAWS = 100


def derive_seed(base_seed: int, instance: int) -> int:
    """Per-instance seed that depends only on (base seed, instance index)"""
    return int(np.random.SeedSequence([int(base_seed), int(instance)]).generate_state(1)[0])


def _nonzero_uniform(rng: np.random.Generator, size: int, low: float, high: float) -> np.ndarray:
    values = rng.uniform(low, high, size)
    zeros = values == 0.0
    while np.any(zeros):
        values[zeros] = rng.uniform(low, high, int(zeros.sum()))
        zeros = values == 0.0
    return values


def _draw(spec: GenSpec, rng: np.random.Generator) -> SymmetricSparseMatrix:
    n = spec.n
    target = spec.target_nnz
    total_pairs = n * (n - 1) // 2

    n_diag = min(n, int(round(spec.density * n)))
    n_pairs = min(total_pairs, max(0, int(round((target - n_diag) / 2.0))))
    # nearest feasible count when pairs saturate
    n_diag = min(n, max(n_diag, target - 2 * n_pairs))

    diag = np.sort(rng.choice(n, size=n_diag, replace=False))
    pair_ids = np.sort(rng.choice(total_pairs, size=n_pairs, replace=False)) if n_pairs else np.zeros(0, dtype=np.int64)
    iu, ju = np.triu_indices(n, 1)
    rows = np.concatenate([diag, iu[pair_ids]])
    cols = np.concatenate([diag, ju[pair_ids]])
    values = _nonzero_uniform(rng, rows.size, spec.value_low, spec.value_high)

    return build_from_triplets(n, zip(rows.tolist(), cols.tolist(), values.tolist()))


def generate(spec: GenSpec) -> SymmetricSparseMatrix:
    """
    Random symmetric matrix with about ``spec.density * n^2`` nonzeros.

    The diagonal takes its share of the budget (density * n entries); the
    rest is spent on off-diagonal pairs drawn uniformly without replacement.
    Values are uniform in [value_low, value_high]. With
    ``full_structural_rank`` the pattern is redrawn from the same stream
    until it admits a nonsingular matrix (empty columns are the usual
    culprit at low density).
    """
    rng = np.random.default_rng(spec.seed)
    m = _draw(spec, rng)
    if not spec.full_structural_rank:
        return m
    if spec.target_nnz < spec.n:
        # fewer nonzeros than columns can never be structurally nonsingular
        logger.debug("n=%d density=%g: budget of %d nonzeros is below n", spec.n, spec.density, spec.target_nnz)
        return m

    for attempt in range(1, MAX_PATTERN_DRAWS):
        if structural_rank(m.to_scipy().tocsr()) == m.n:
            return m
        logger.debug("seed %d: pattern draw %d is structurally singular", spec.seed, attempt)
        m = _draw(spec, rng)
    if structural_rank(m.to_scipy().tocsr()) < m.n:
        logger.warning("no structurally nonsingular pattern for n=%d density=%g after %d draws",
                       spec.n, spec.density, MAX_PATTERN_DRAWS)
    return m


def achieved_density(m: SymmetricSparseMatrix) -> float:
    return m.nnz / float(m.n * m.n)


def fill_percentage(f: Factorization) -> float:
    """100 * (strictly lower nnz of L + n unit diagonals) / n^2"""
    n = f.n
    return 100.0 * (f.L.nnz + n) / float(n * n)


def residual(A: SymmetricSparseMatrix, f: Factorization) -> float:
    """Frobenius norm of P^T A P - L B L^T"""
    if A.n != f.n:
        raise DimensionMismatchError(f"matrix of size {A.n} against factorization of size {f.n}")
    diff = apply_permutation(A, f.perm).to_scipy() - f.product()
    return float(spla.norm(diff, 'fro'))


def relative_factor_residual(A: SymmetricSparseMatrix, f: Factorization) -> float:
    norm_a = A.frobenius_norm()
    r = residual(A, f)
    return r / norm_a if norm_a else r

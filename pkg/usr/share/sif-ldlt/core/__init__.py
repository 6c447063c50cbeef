"""
SIF Core Package
Sparse symmetric indefinite factorization: models, pivoting, factorizer, solver and services
"""

from .config import Config
from .exceptions import (
    SifError,
    MatrixFormatError,
    IndexOutOfRangeError,
    AsymmetryError,
    DimensionMismatchError,
    SingularMatrixError,
    InvalidOptionError
)
from .models import (
    SymmetricSparseMatrix,
    Permutation,
    BlockDiagonal,
    SparseLowerTriangular,
    Factorization,
    PivotChoice,
    PivotKind,
    NO_PIVOT,
    StabilityConfig,
    FactorizeOptions,
    FactorizeStats,
    GenSpec,
    BenchRow,
    BenchReport,
    build_from_triplets,
    apply_permutation
)
from .pivoting import EliminationState, select_pivot, update_after_elimination
from .dense import DenseSymMatrix, bbk_select, dense_factorize
from .factorizer import factorize
from .solver import solve, solve_many, relative_residual
from .matgen import generate, fill_percentage, residual, derive_seed
from .ordering import minimum_degree_ordering, symbolic_fill, ordering_fill_percentage
from .services import MatrixStore, ExportService, BenchmarkService

__all__ = [
    # Configuration
    'Config',

    # Errors
    'SifError',
    'MatrixFormatError',
    'IndexOutOfRangeError',
    'AsymmetryError',
    'DimensionMismatchError',
    'SingularMatrixError',
    'InvalidOptionError',

    # Models
    'SymmetricSparseMatrix',
    'Permutation',
    'BlockDiagonal',
    'SparseLowerTriangular',
    'Factorization',
    'PivotChoice',
    'PivotKind',
    'NO_PIVOT',
    'StabilityConfig',
    'FactorizeOptions',
    'FactorizeStats',
    'GenSpec',
    'BenchRow',
    'BenchReport',
    'build_from_triplets',
    'apply_permutation',

    # Algorithms
    'EliminationState',
    'select_pivot',
    'update_after_elimination',
    'DenseSymMatrix',
    'bbk_select',
    'dense_factorize',
    'factorize',
    'solve',
    'solve_many',
    'relative_residual',
    'generate',
    'fill_percentage',
    'residual',
    'derive_seed',
    'minimum_degree_ordering',
    'symbolic_fill',
    'ordering_fill_percentage',

    # Services
    'MatrixStore',
    'ExportService',
    'BenchmarkService'
]

__version__ = Config.APP_VERSION

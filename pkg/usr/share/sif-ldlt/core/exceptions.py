"""
SIF Exceptions
Error hierarchy shared by the factorization library and the command line
"""


class SifError(Exception):
    """Base class for every error raised by the library"""


class MatrixFormatError(SifError, ValueError):
    """A matrix or vector file could not be parsed"""


class IndexOutOfRangeError(SifError, IndexError):
    """A triplet index lies outside [0, n)"""


class AsymmetryError(SifError, ValueError):
    """Mirror entries (i, j) and (j, i) disagree"""


class DimensionMismatchError(SifError, ValueError):
    """Operands have incompatible dimensions"""


class SingularMatrixError(SifError, ArithmeticError):
    """Neither the sparse nor the dense phase found a usable pivot"""


class InvalidOptionError(SifError, ValueError):
    """A configuration value is outside its admissible range"""

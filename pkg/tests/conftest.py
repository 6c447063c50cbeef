"""
Shared fixtures for the SIF test suite
"""

import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

# Setup path for imports, as main.py does
app_dir = Path(__file__).resolve().parent.parent / 'usr' / 'share' / 'sif-ldlt'
if str(app_dir) not in sys.path:
    sys.path.insert(0, str(app_dir))

settings.register_profile('default', max_examples=60, deadline=None)
settings.register_profile('thorough', max_examples=400, deadline=None)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))

from core.config import Config  # noqa: E402
from core.models import SymmetricSparseMatrix  # noqa: E402


@pytest.fixture
def config(tmp_path):
    """Configuration isolated from the user's XDG directory"""
    return Config(config_dir=tmp_path / 'config')


@pytest.fixture
def write_mtx(tmp_path):
    """Write raw Matrix Market text and return its path"""
    def _write(text: str, name: str = 'matrix.mtx') -> Path:
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return _write


@pytest.fixture
def exchange():
    return SymmetricSparseMatrix.from_dense([[0.0, 1.0], [1.0, 0.0]])


@pytest.fixture
def arrow():
    """Arrowhead matrix with a zero in the corner: the hub is best left for last"""
    n = 6
    dense = [[0.0] * n for _ in range(n)]
    for k in range(1, n):
        dense[k][k] = float(k + 1)
        dense[0][k] = dense[k][0] = 1.0
    return SymmetricSparseMatrix.from_dense(dense)

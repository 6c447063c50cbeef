"""
SIF Utility Helpers
File naming, option parsing, validation and formatting used by the command line
"""

import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from utils.i18n import _

logger = logging.getLogger(__name__)


class FileHelper:
    """Helper functions for file operations"""

    @staticmethod
    def ensure_extension(filename: str, extension: str) -> str:
        """Ensure filename has the correct extension"""
        if not extension.startswith('.'):
            extension = '.' + extension

        if not filename.lower().endswith(extension.lower()):
            return filename + extension
        return filename

    @staticmethod
    def output_prefix(matrix_path: str, prefix: Optional[str] = None) -> str:
        """Prefix for factor files: explicit one, or the matrix path without `.mtx`"""
        if prefix:
            return prefix
        path = Path(matrix_path)
        if path.suffix.lower() == '.mtx':
            path = path.with_suffix('')
        return str(path)

    @staticmethod
    def solution_path(rhs_path: str, output: Optional[str] = None) -> str:
        """Where the solution vector goes: explicit path, or `<rhs stem>.x.txt`"""
        if output:
            return output
        path = Path(rhs_path)
        return str(path.with_suffix('')) + '.x.txt'

    @staticmethod
    def instance_filename(directory: str, n: int, density: float, seed: int) -> Path:
        """Deterministic name for a generated instance"""
        return Path(directory) / f"sym_n{n}_d{density:g}_s{seed}.mtx"


class ValidationHelper:
    """Helper functions for validation"""

    @staticmethod
    def parse_int_list(text: str) -> List[int]:
        """Parse a comma separated list of integers"""
        if text is None or not str(text).strip():
            raise ValueError(_("List cannot be empty"))
        try:
            return [int(part) for part in str(text).split(',') if part.strip()]
        except ValueError:
            raise ValueError(_("Invalid integer list: {}").format(text)) from None

    @staticmethod
    def parse_float_list(text: str) -> List[float]:
        """Parse a comma separated list of floats"""
        if text is None or not str(text).strip():
            raise ValueError(_("List cannot be empty"))
        try:
            return [float(part) for part in str(text).split(',') if part.strip()]
        except ValueError:
            raise ValueError(_("Invalid number list: {}").format(text)) from None

    @staticmethod
    def validate_sizes(sizes: Sequence[int]) -> Tuple[bool, str]:
        """Validate benchmark dimensions and return (is_valid, error_message)"""
        if not sizes:
            return False, _("At least one dimension is required")
        for n in sizes:
            if n < 1:
                return False, _("Dimension must be positive: {}").format(n)
        return True, ""

    @staticmethod
    def validate_densities(densities: Sequence[float]) -> Tuple[bool, str]:
        """Validate densities and return (is_valid, error_message)"""
        if not densities:
            return False, _("At least one density is required")
        for d in densities:
            if not 0.0 < d <= 1.0:
                return False, _("Density must lie in (0, 1]: {}").format(d)
        return True, ""

    @staticmethod
    def validate_alphas(alphas: Sequence[float]) -> Tuple[bool, str]:
        """Validate stability thresholds and return (is_valid, error_message)"""
        if not alphas:
            return False, _("At least one alpha is required")
        for a in alphas:
            if not 0.0 < a <= 0.5:
                return False, _("Alpha must lie in (0, 0.5]: {}").format(a)
        return True, ""


class FormatHelper:
    """Helper functions for formatting"""

    @staticmethod
    def format_seconds(seconds: float) -> str:
        if seconds < 1.0:
            return f"{seconds * 1000.0:.1f} ms"
        return f"{seconds:.3f} s"

    @staticmethod
    def format_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
        """Right aligned plain text table"""
        widths = [len(h) for h in headers]
        for row in rows:
            for k, cell in enumerate(row):
                widths[k] = max(widths[k], len(cell))

        def line(cells):
            return '  '.join(str(c).rjust(w) for c, w in zip(cells, widths)).rstrip()

        out = [line(headers), line(['-' * w for w in widths])]
        out.extend(line(row) for row in rows)
        return '\n'.join(out) + '\n'

    @staticmethod
    def format_stats(stats: Dict[str, Any]) -> str:
        """Factorization summary for display"""
        n = stats.get('n', 0)
        nnz = stats.get('nnz_L', 0)
        fill = 100.0 * nnz / float(n * n) if n else 0.0
        switch = stats.get('dense_switch_at')
        lines = [
            _("dimension: {}").format(n),
            _("nnz(L): {} ({:.2f}% of n^2)").format(nnz, fill),
            _("1x1 pivots: {} sparse, {} dense").format(stats.get('num_1x1', 0), stats.get('dense_1x1', 0)),
            _("2x2 pivots: {} sparse, {} dense").format(stats.get('num_2x2', 0), stats.get('dense_2x2', 0)),
            _("dense switch: {}").format(_("none") if switch is None else _("at step {}").format(switch)),
            _("max |L|: {:.6g}").format(stats.get('max_abs_L', 0.0)),
        ]
        return '\n'.join(lines)


class DebugHelper:
    """Helper functions for debugging and logging"""

    @staticmethod
    def log_performance(func_name: str, start_time: float, end_time: Optional[float] = None) -> float:
        """Log how long a step took; times come from time.perf_counter"""
        if end_time is None:
            end_time = time.perf_counter()
        duration = end_time - start_time
        logger.info(_("Performance: {} took {:.3f} seconds").format(func_name, duration))
        return duration

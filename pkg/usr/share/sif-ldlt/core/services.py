"""
SIF Core Services
Matrix Market storage, factor/report export and the benchmark sweep
"""

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.io
import scipy.sparse as sp

from .exceptions import AsymmetryError, DimensionMismatchError, MatrixFormatError
from .factorizer import factorize
from .matgen import derive_seed, fill_percentage, generate, residual
from .models import (
    BenchReport,
    BenchRow,
    Factorization,
    FactorizeOptions,
    FactorizeStats,
    GenSpec,
    PairBlock,
    SymmetricSparseMatrix,
    build_from_triplets,
)
from .ordering import ordering_fill_percentage
from utils.helpers import FileHelper, FormatHelper

logger = logging.getLogger(__name__)


class MatrixStore:
    """Reads and writes matrices and vectors"""

    BANNER = '%%matrixmarket'
    SUPPORTED_FIELDS = ('real', 'integer')
    SUPPORTED_SYMMETRY = ('general', 'symmetric')

    def __init__(self, float_format: str = '.17g'):
        self.float_format = float_format

    @property
    def precision(self) -> int:
        digits = ''.join(ch for ch in self.float_format if ch.isdigit())
        return int(digits) if digits else 17

    def read_matrix_market(self, path) -> SymmetricSparseMatrix:
        """Read a square coordinate file; `general` files must be exactly symmetric"""
        path = Path(path)
        with open(path, 'r', encoding='utf-8', errors='replace') as f:
            banner = f.readline()
        if not banner.lower().startswith(self.BANNER):
            raise MatrixFormatError(f"{path}: missing {self.BANNER} header")

        try:
            rows, cols, _entries, fmt, field, symmetry = scipy.io.mminfo(str(path))
        except (ValueError, IndexError) as e:
            raise MatrixFormatError(f"{path}: not a Matrix Market file ({e})") from e

        if fmt != 'coordinate':
            raise MatrixFormatError(f"{path}: only coordinate format is supported, got {fmt}")
        if field not in self.SUPPORTED_FIELDS:
            raise MatrixFormatError(f"{path}: unsupported field '{field}'")
        if symmetry not in self.SUPPORTED_SYMMETRY:
            raise MatrixFormatError(f"{path}: unsupported symmetry '{symmetry}'")
        if rows != cols:
            raise MatrixFormatError(f"{path}: matrix is {rows}x{cols}, expected square")

        try:
            coo = sp.coo_matrix(scipy.io.mmread(str(path)))
        except (ValueError, IndexError) as e:
            raise MatrixFormatError(f"{path}: {e}") from e

        if symmetry == 'general':
            csr = coo.tocsr()
            if (csr - csr.T).count_nonzero():
                raise AsymmetryError(f"{path}: general matrix is not symmetric")

        entries = zip(coo.row.tolist(), coo.col.tolist(), coo.data.astype(np.float64).tolist())
        matrix = build_from_triplets(rows, entries)
        logger.info("read %s: n=%d nnz=%d (%s)", path, matrix.n, matrix.nnz, symmetry)
        return matrix

    def write_matrix_market(self, path, m: SymmetricSparseMatrix, comment: str = '') -> Path:
        """Write the lower triangle with the `symmetric` qualifier"""
        path = Path(FileHelper.ensure_extension(str(path), '.mtx'))
        lower = list(m.lower_triplets())
        coo = sp.coo_matrix(
            ([v for _, _, v in lower], ([i for i, _, _ in lower], [j for _, j, _ in lower])),
            shape=(m.n, m.n),
        )
        scipy.io.mmwrite(str(path), coo, comment=comment, field='real',
                         precision=self.precision, symmetry='symmetric')
        return path

    def read_vector(self, path, expected: Optional[int] = None) -> np.ndarray:
        """Plain text vector, one value per line"""
        path = Path(path)
        try:
            values = np.loadtxt(str(path), dtype=np.float64, ndmin=1, comments=('%', '#'))
        except ValueError as e:
            raise MatrixFormatError(f"{path}: {e}") from e
        if values.ndim != 1:
            raise MatrixFormatError(f"{path}: expected one value per line")
        if expected is not None and values.size != expected:
            raise DimensionMismatchError(f"{path}: vector has {values.size} entries, expected {expected}")
        return values

    def write_vector(self, path, x: Sequence[float]) -> Path:
        path = Path(path)
        with open(path, 'w', encoding='utf-8') as f:
            for value in np.asarray(x, dtype=np.float64).tolist():
                f.write(format(value, self.float_format) + '\n')
        return path


class ExportService:
    """Writes factors and benchmark reports"""

    def __init__(self, float_format: str = '.17g'):
        self.float_format = float_format
        self.store = MatrixStore(float_format)

    def _fmt(self, value: float) -> str:
        return format(float(value), self.float_format)

    def get_available_formats(self) -> List[str]:
        """Report formats understood by export_report"""
        return ['csv', 'txt']

    # Factors

    def format_blocks(self, f: Factorization) -> str:
        """One line per block: `1 i v` or `2 i j v11 v12 v22`, 0-based positions"""
        lines = []
        for start, block in zip(f.B.starts, f.B.blocks):
            if isinstance(block, PairBlock):
                lines.append(' '.join([
                    '2', str(start), str(start + 1),
                    self._fmt(block.b11), self._fmt(block.b12), self._fmt(block.b22),
                ]))
            else:
                lines.append(f"1 {start} {self._fmt(block.value)}")
        return '\n'.join(lines) + ('\n' if lines else '')

    def format_permutation(self, f: Factorization) -> str:
        """Original index at each position, one per line"""
        return ''.join(f"{i}\n" for i in f.perm.to_list())

    def write_factors(self, prefix, f: Factorization, stats: FactorizeStats,
                      options: Optional[FactorizeOptions] = None) -> Dict[str, Path]:
        """Write `<prefix>.L.mtx`, `.B.txt`, `.P.txt` and `.stats.json`"""
        prefix = str(prefix)
        paths = {
            'L': Path(prefix + '.L.mtx'),
            'B': Path(prefix + '.B.txt'),
            'P': Path(prefix + '.P.txt'),
            'stats': Path(prefix + '.stats.json'),
        }
        paths['L'].parent.mkdir(parents=True, exist_ok=True)

        scipy.io.mmwrite(str(paths['L']), f.L.to_scipy(unit_diagonal=True).tocoo(),
                         comment='unit lower triangular factor L', field='real',
                         precision=self.store.precision, symmetry='general')
        paths['B'].write_text(self.format_blocks(f), encoding='utf-8')
        paths['P'].write_text(self.format_permutation(f), encoding='utf-8')

        summary = stats.to_dict()
        if options is not None:
            summary['options'] = options.to_dict()
        with open(paths['stats'], 'w', encoding='utf-8') as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write('\n')

        logger.info("factors written with prefix %s", prefix)
        return paths

    # Reports

    def _report_columns(self, baseline: bool, timing: bool) -> List[str]:
        columns = ['kind'] + list(BenchRow.FIELDS)
        if baseline:
            columns.append('md_fill_pct')
        if timing:
            columns.append('wall_time')
        return columns

    def _report_records(self, report: BenchReport, baseline: bool, timing: bool) -> List[List[str]]:
        fmt = self._fmt
        aggregates = {(a.n, a.density, a.alpha): a for a in report.aggregates()}
        records = []
        for cell in report.cells():
            for row in (r for r in report.rows if r.cell == cell):
                record = ['instance', str(row.n), repr(row.density), repr(row.alpha),
                          str(row.instance), str(row.seed), fmt(row.fill_pct_L), fmt(row.residual),
                          str(row.num_1x1), str(row.num_2x2),
                          '' if row.dense_switch_at is None else str(row.dense_switch_at),
                          fmt(row.max_abs_L)]
                if baseline:
                    record.append('' if row.md_fill_pct is None else fmt(row.md_fill_pct))
                if timing:
                    record.append(fmt(row.wall_time))
                records.append(record)
            agg = aggregates[cell]
            record = ['aggregate', str(agg.n), repr(agg.density), repr(agg.alpha),
                      '', '', fmt(agg.fill_pct_L), fmt(agg.residual), '', '', '', '']
            if baseline:
                record.append('' if agg.md_fill_pct is None else fmt(agg.md_fill_pct))
            if timing:
                record.append(fmt(agg.wall_time))
            records.append(record)
        return records

    def render_report(self, report: BenchReport, format_type: str = 'txt') -> str:
        baseline = bool(report.config.get('baseline'))
        timing = bool(report.config.get('timing'))
        columns = self._report_columns(baseline, timing)

        if format_type == 'csv':
            buf = io.StringIO()
            buf.write(f"# residual_norm={BenchReport.RESIDUAL_NORM}\n")
            buf.write(f"# fill={BenchReport.FILL_FORMULA}\n")
            buf.write(f"# generator={BenchReport.GENERATOR}\n")
            buf.write('# config=' + json.dumps(report.config, sort_keys=True) + '\n')
            writer = csv.writer(buf, lineterminator='\n')
            writer.writerow(columns)
            writer.writerows(self._report_records(report, baseline, timing))
            return buf.getvalue()

        if format_type == 'txt':
            headers = ['n', 'density', 'alpha', 'instances', 'fill_pct_L', 'residual']
            if baseline:
                headers.append('md_fill_pct')
            headers.append('wall_time')
            records = []
            for agg in report.aggregates():
                record = [str(agg.n), f"{agg.density:.2f}", f"{agg.alpha:g}", str(agg.count),
                          f"{agg.fill_pct_L:.2f}", f"{agg.residual:.3e}"]
                if baseline:
                    record.append('-' if agg.md_fill_pct is None else f"{agg.md_fill_pct:.2f}")
                record.append(FormatHelper.format_seconds(agg.wall_time))
                records.append(record)
            header = f"residual norm: {BenchReport.RESIDUAL_NORM}; fill: {BenchReport.FILL_FORMULA}\n"
            return header + FormatHelper.format_table(headers, records)

        raise ValueError(f"unsupported report format '{format_type}'")

    def export_report(self, report: BenchReport, file_path, format_type: str = 'csv') -> Path:
        """Export a benchmark report to the given file"""
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(self.render_report(report, format_type))
        return path


def run_instance(task: Tuple[int, float, float, int, int, Dict[str, float], bool, float, float]) -> BenchRow:
    """Generate, factorize and measure one instance (module level so worker processes can pickle it)"""
    n, density, alpha, index, base_seed, option_values, baseline, low, high = task
    seed = derive_seed(base_seed, index)
    matrix = generate(GenSpec(n, density, seed, low, high))

    values = dict(option_values)
    values['alpha'] = alpha
    opts = FactorizeOptions.from_dict(values)

    start = time.perf_counter()
    f, stats = factorize(matrix, opts)
    elapsed = time.perf_counter() - start

    return BenchRow(
        n=n, density=density, alpha=alpha, instance=index, seed=seed,
        fill_pct_L=fill_percentage(f), residual=residual(matrix, f),
        num_1x1=stats.total_1x1, num_2x2=stats.total_2x2,
        dense_switch_at=stats.dense_switch_at, max_abs_L=stats.max_abs_L,
        wall_time=elapsed,
        md_fill_pct=ordering_fill_percentage(matrix) if baseline else None,
    )


class BenchmarkService:
    """Runs the (n, density, alpha) sweep over generated instances"""

    def __init__(self, options: Optional[FactorizeOptions] = None, workers: int = 1,
                 value_low: float = -1.0, value_high: float = 1.0):
        self.options = options or FactorizeOptions()
        self.workers = max(1, int(workers))
        self.value_low = value_low
        self.value_high = value_high

    def tasks(self, sizes: Sequence[int], densities: Sequence[float], alphas: Sequence[float],
              instances: int, seed: int, baseline: bool = False) -> List[tuple]:
        option_values = self.options.to_dict()
        return [
            (int(n), float(d), float(a), i, int(seed), option_values, baseline,
             self.value_low, self.value_high)
            for n in sizes for d in densities for a in alphas for i in range(instances)
        ]

    def run(self, sizes: Sequence[int], densities: Sequence[float], alphas: Sequence[float],
            instances: int, seed: int, baseline: bool = False, timing: bool = False) -> BenchReport:
        tasks = self.tasks(sizes, densities, alphas, instances, seed, baseline)
        logger.info("running %d instances with %d worker(s)", len(tasks), self.workers)

        if self.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(run_instance, tasks))
        else:
            rows = [run_instance(task) for task in tasks]

        config = {
            'sizes': [int(n) for n in sizes],
            'densities': [float(d) for d in densities],
            'alphas': [float(a) for a in alphas],
            'instances': int(instances),
            'seed': int(seed),
            'dense_switch_density': self.options.dense_switch_density,
            'dense_switch_min_dim': self.options.dense_switch_min_dim,
            'bk_constant': self.options.stability.bk_constant,
            'value_range': [self.value_low, self.value_high],
            'baseline': bool(baseline),
            'timing': bool(timing),
        }
        return BenchReport(config, rows)

"""
Tests for Matrix Market storage, factor export and the benchmark sweep
"""

import csv
import io
import json

import numpy as np
import pytest
import scipy.io

from core.exceptions import AsymmetryError, DimensionMismatchError, MatrixFormatError
from core.factorizer import factorize
from core.matgen import generate
from core.models import BenchReport, BenchRow, FactorizeOptions, GenSpec, SymmetricSparseMatrix
from core.services import BenchmarkService, ExportService, MatrixStore, run_instance

SYMMETRIC_MTX = """%%MatrixMarket matrix coordinate real symmetric
% lower triangle only
3 3 4
1 1 2.0
2 1 -1.0
3 2 0.5
3 3 4.0
"""

GENERAL_MTX = """%%MatrixMarket matrix coordinate real general
2 2 2
1 2 1.0
2 1 1.0
"""


class TestMatrixStore:

    def test_read_symmetric(self, write_mtx):
        m = MatrixStore().read_matrix_market(write_mtx(SYMMETRIC_MTX))
        assert m.n == 3
        assert m.get(0, 1) == m.get(1, 0) == -1.0
        assert m.get(2, 1) == 0.5
        assert m.nnz == 6

    def test_read_general_symmetric(self, write_mtx, exchange):
        assert MatrixStore().read_matrix_market(write_mtx(GENERAL_MTX)) == exchange

    def test_read_integer_field(self, write_mtx):
        text = "%%MatrixMarket matrix coordinate integer symmetric\n2 2 2\n1 1 3\n2 1 -2\n"
        m = MatrixStore().read_matrix_market(write_mtx(text))
        assert m.get(1, 0) == -2.0

    def test_general_asymmetric(self, write_mtx):
        text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 1.0\n"
        with pytest.raises(AsymmetryError):
            MatrixStore().read_matrix_market(write_mtx(text))

    def test_bad_header(self, write_mtx):
        with pytest.raises(MatrixFormatError):
            MatrixStore().read_matrix_market(write_mtx("not a matrix\n1 1 1\n1 1 1.0\n"))

    def test_rectangular(self, write_mtx):
        text = "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n"
        with pytest.raises(MatrixFormatError):
            MatrixStore().read_matrix_market(write_mtx(text))

    @pytest.mark.parametrize('field', ['pattern', 'complex'])
    def test_unsupported_field(self, write_mtx, field):
        entry = '1 1' if field == 'pattern' else '1 1 1.0 0.0'
        text = f"%%MatrixMarket matrix coordinate {field} symmetric\n1 1 1\n{entry}\n"
        with pytest.raises(MatrixFormatError):
            MatrixStore().read_matrix_market(write_mtx(text))

    def test_array_format(self, write_mtx):
        text = "%%MatrixMarket matrix array real general\n1 1\n1.0\n"
        with pytest.raises(MatrixFormatError):
            MatrixStore().read_matrix_market(write_mtx(text))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            MatrixStore().read_matrix_market(tmp_path / 'missing.mtx')

    def test_write_read_round_trip(self, tmp_path):
        m = generate(GenSpec(25, 0.2, 8))
        store = MatrixStore()
        path = store.write_matrix_market(tmp_path / 'instance', m, comment='round trip')
        assert path.suffix == '.mtx'
        assert scipy.io.mminfo(str(path))[5] == 'symmetric'
        assert store.read_matrix_market(path) == m

    def test_vectors(self, tmp_path):
        store = MatrixStore()
        path = store.write_vector(tmp_path / 'x.txt', [0.1, -2.0, 0.25])
        assert path.read_text().splitlines() == ['0.10000000000000001', '-2', '0.25']
        assert store.read_vector(path, expected=3).tolist() == [0.1, -2.0, 0.25]
        with pytest.raises(DimensionMismatchError):
            store.read_vector(path, expected=4)

    def test_bad_vector(self, tmp_path):
        path = tmp_path / 'b.txt'
        path.write_text("1.0\nabc\n")
        with pytest.raises(MatrixFormatError):
            MatrixStore().read_vector(path)


class TestWriteFactors:

    def test_exchange_matrix_files(self, tmp_path, exchange):
        f, stats = factorize(exchange)
        paths = ExportService().write_factors(tmp_path / 'out' / 'ex', f, stats, FactorizeOptions())

        assert paths['B'].read_text() == "2 0 1 0 1 0\n"
        assert paths['P'].read_text() == "0\n1\n"
        L = scipy.io.mmread(str(paths['L']))
        assert np.array_equal(np.asarray(L.todense()), np.eye(2))

        summary = json.loads(paths['stats'].read_text())
        assert summary['num_2x2'] == 0
        assert summary['dense_2x2'] == 1
        assert summary['nnz_L'] == 2
        assert summary['options']['alpha'] == 0.01

    def test_block_lines(self):
        m = SymmetricSparseMatrix.from_dense(np.diag([2.0, -0.5]))
        f, _ = factorize(m)
        assert ExportService().format_blocks(f) == "1 0 2\n1 1 -0.5\n"


def sample_report(**config):
    rows = [
        BenchRow(10, 0.3, 0.01, 0, 11, 40.0, 1e-16, 8, 1, 2, 3.5, wall_time=0.25, md_fill_pct=38.0),
        BenchRow(10, 0.3, 0.01, 1, 12, 50.0, 3e-16, 6, 2, None, 1.5, wall_time=0.75, md_fill_pct=41.0),
    ]
    return BenchReport(config, rows)


class TestRenderReport:

    def parse(self, text):
        lines = text.splitlines()
        declarations = [line for line in lines if line.startswith('#')]
        body = [line for line in lines if not line.startswith('#')]
        return declarations, list(csv.reader(io.StringIO('\n'.join(body))))

    def test_csv_layout(self):
        declarations, table = self.parse(ExportService().render_report(sample_report(), 'csv'))
        assert declarations[0] == '# residual_norm=frobenius'
        assert declarations[1].startswith('# fill=')
        assert table[0] == ['kind'] + list(BenchRow.FIELDS)
        assert [r[0] for r in table[1:]] == ['instance', 'instance', 'aggregate']
        assert table[2][10] == ''
        assert table[3][6] == '45'
        assert float(table[3][7]) == pytest.approx(2e-16)

    def test_csv_optional_columns(self):
        text = ExportService().render_report(sample_report(baseline=True, timing=True), 'csv')
        _decl, table = self.parse(text)
        assert table[0][-2:] == ['md_fill_pct', 'wall_time']
        assert table[1][-1] == '0.25'
        assert table[3][-2:] == ['39.5', '0.5']

    def test_csv_without_timing_has_no_times(self):
        text = ExportService().render_report(sample_report(baseline=True), 'csv')
        assert 'wall_time' not in text
        assert '0.25' not in text

    def test_txt_table(self):
        text = ExportService().render_report(sample_report(), 'txt')
        assert text.startswith('residual norm: frobenius')
        assert '45.00' in text
        assert 'wall_time' in text
        assert '500.0 ms' in text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            ExportService().render_report(sample_report(), 'xlsx')

    def test_export(self, tmp_path):
        exporter = ExportService()
        path = exporter.export_report(sample_report(), tmp_path / 'r' / 'bench.csv')
        assert path.read_text() == exporter.render_report(sample_report(), 'csv')
        assert exporter.get_available_formats() == ['csv', 'txt']


class TestBenchmarkService:

    def test_run_instance_is_deterministic(self):
        task = BenchmarkService().tasks([20], [0.2], [0.01], 1, 42)[0]
        first, second = run_instance(task), run_instance(task)
        assert first.seed == second.seed
        assert first.fill_pct_L == second.fill_pct_L
        assert first.residual == second.residual

    def test_rows_follow_cell_order(self):
        report = BenchmarkService().run([8, 12], [0.5], [0.01, 0.1], 2, 7)
        assert report.cells() == [(8, 0.5, 0.01), (8, 0.5, 0.1), (12, 0.5, 0.01), (12, 0.5, 0.1)]
        assert [r.instance for r in report.rows] == [0, 1] * 4
        assert report.config['instances'] == 2

    def test_seeds_shared_across_alphas(self):
        report = BenchmarkService().run([10], [0.5], [0.01, 0.5], 3, 1)
        by_alpha = {}
        for row in report.rows:
            by_alpha.setdefault(row.alpha, []).append(row.seed)
        assert by_alpha[0.01] == by_alpha[0.5]

    def test_baseline_column(self):
        report = BenchmarkService().run([10], [0.5], [0.01], 2, 1, baseline=True)
        assert all(r.md_fill_pct is not None for r in report.rows)
        assert report.aggregates()[0].md_fill_pct is not None

    def test_csv_is_reproducible(self):
        exporter = ExportService()
        first = exporter.render_report(BenchmarkService().run([15], [0.3], [0.01], 3, 42), 'csv')
        second = exporter.render_report(BenchmarkService().run([15], [0.3], [0.01], 3, 42), 'csv')
        assert first == second

    def test_workers_give_same_rows(self):
        exporter = ExportService()
        serial = BenchmarkService().run([12], [0.3], [0.01], 4, 5)
        parallel = BenchmarkService(workers=2).run([12], [0.3], [0.01], 4, 5)
        assert exporter.render_report(serial, 'csv') == exporter.render_report(parallel, 'csv')

"""
SIF Application Class

Command line controller: generate instances, factorize, solve and run the benchmark sweep
"""

# Standard library imports
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

# Local imports
from core.config import Config
from core.exceptions import (
    AsymmetryError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidOptionError,
    MatrixFormatError,
    SingularMatrixError,
)
from core.factorizer import factorize
from core.matgen import fill_percentage, generate, residual
from core.models import FactorizeOptions, GenSpec
from core.services import BenchmarkService, ExportService, MatrixStore
from core.solver import relative_residual, solve
from utils.helpers import DebugHelper, FileHelper, FormatHelper, ValidationHelper
from utils.i18n import _

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3


class SifArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, _("{}: error: {}\n").format(self.prog, message))


def exit_code_for(error: BaseException) -> int:
    """Map a failure to the documented exit codes"""
    if isinstance(error, SingularMatrixError):
        return EXIT_NUMERICAL
    if isinstance(error, InvalidOptionError):
        return EXIT_USAGE
    if isinstance(error, (OSError, MatrixFormatError, AsymmetryError,
                          IndexOutOfRangeError, DimensionMismatchError)):
        return EXIT_IO
    return EXIT_USAGE


class SifApplication:
    """Main SIF application class"""

    def __init__(self, config: Optional[Config] = None):
        self.config = config if config is not None else Config()
        self.parser = self._build_parser()

    def _build_parser(self) -> SifArgumentParser:
        parser = SifArgumentParser(
            prog=Config.APP_NAME,
            description=Config.APP_DESCRIPTION,
        )
        parser.add_argument('--version', action='version',
                            version=f"{Config.APP_NAME} {Config.APP_VERSION}")
        parser.add_argument('-v', '--verbose', action='count', default=0,
                            help=_("more log output (-v info, -vv debug)"))
        parser.add_argument('--config', metavar='PATH',
                            help=_("JSON configuration file to import"))
        commands = parser.add_subparsers(dest='command', metavar='COMMAND',
                                         parser_class=SifArgumentParser)
        commands.required = True

        factor = commands.add_parser('factor', help=_("factorize a Matrix Market file"))
        factor.add_argument('matrix', help=_("symmetric matrix (.mtx)"))
        factor.add_argument('--alpha', type=float, help=_("stability threshold in (0, 0.5]"))
        self._add_dense_options(factor)
        factor.add_argument('-o', '--output', metavar='PREFIX',
                            help=_("prefix for .L.mtx, .B.txt, .P.txt and .stats.json"))
        factor.add_argument('--check', action='store_true',
                            help=_("print fill percentage and reconstruction residual"))
        factor.set_defaults(handler=self.cmd_factor)

        solve_cmd = commands.add_parser('solve', help=_("solve A x = b"))
        solve_cmd.add_argument('matrix', help=_("symmetric matrix (.mtx)"))
        solve_cmd.add_argument('rhs', help=_("right-hand side, one value per line"))
        solve_cmd.add_argument('--alpha', type=float, help=_("stability threshold in (0, 0.5]"))
        self._add_dense_options(solve_cmd)
        solve_cmd.add_argument('-o', '--output', metavar='PATH', help=_("solution file"))
        solve_cmd.add_argument('--verify', action='store_true',
                               help=_("print ||Ax - b|| / ||b||"))
        solve_cmd.set_defaults(handler=self.cmd_solve)

        bench = commands.add_parser('bench', help=_("run the random instance sweep"))
        bench.add_argument('--n', help=_("comma separated dimensions"))
        bench.add_argument('--density', help=_("comma separated densities"))
        bench.add_argument('--alpha', help=_("comma separated stability thresholds"))
        bench.add_argument('--instances', type=int, help=_("instances per cell"))
        bench.add_argument('--seed', type=int, help=_("base seed"))
        self._add_dense_options(bench)
        bench.add_argument('--csv', metavar='PATH', help=_("write the report as CSV"))
        bench.add_argument('--baseline', action='store_true',
                           help=_("add the plain minimum degree fill for comparison"))
        bench.add_argument('--timing', action='store_true',
                           help=_("write wall times to the CSV report"))
        bench.add_argument('--workers', type=int, help=_("worker processes"))
        bench.set_defaults(handler=self.cmd_bench)

        gen = commands.add_parser('generate', help=_("write a random symmetric instance"))
        gen.add_argument('--n', type=int, required=True, help=_("dimension"))
        gen.add_argument('--density', type=float, required=True, help=_("density in (0, 1]"))
        gen.add_argument('--seed', type=int, help=_("seed"))
        gen.add_argument('-o', '--output', metavar='PATH', help=_("output .mtx file"))
        gen.set_defaults(handler=self.cmd_generate)

        return parser

    @staticmethod
    def _add_dense_options(parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--dense-density', type=float,
                            help=_("remaining density that triggers the dense phase"))
        parser.add_argument('--dense-min-dim', type=int,
                            help=_("remaining dimension that triggers the dense phase"))

    def _setup_logging(self, verbosity: int) -> None:
        level = logging.WARNING
        if verbosity == 1:
            level = logging.INFO
        elif verbosity >= 2:
            level = logging.DEBUG
        logging.basicConfig(level=level, stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')
        logging.getLogger().setLevel(level)

        # Route numpy/scipy warnings through logging, visible only when debugging
        logging.captureWarnings(True)
        logging.getLogger('py.warnings').setLevel(logging.DEBUG if verbosity >= 2 else logging.ERROR)

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse arguments, run one command and return its exit code"""
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        self._setup_logging(args.verbose)

        if args.config and not self.config.import_config(args.config):
            print(_("Error: cannot read configuration {}").format(args.config), file=sys.stderr)
            return EXIT_IO

        try:
            return args.handler(args)
        except (SingularMatrixError, InvalidOptionError, MatrixFormatError, AsymmetryError,
                IndexOutOfRangeError, DimensionMismatchError, OSError) as e:
            code = exit_code_for(e)
            logger.debug("command %s failed", args.command, exc_info=True)
            print(_("Error: {}").format(e), file=sys.stderr)
            return code

    # Options

    def _factorize_options(self, args, alpha: Optional[float] = None) -> FactorizeOptions:
        self.config.update({
            'alpha': alpha,
            'dense_switch_density': args.dense_density,
            'dense_switch_min_dim': args.dense_min_dim,
        })
        return self.config.factorize_options()

    @staticmethod
    def _check(ok_message) -> None:
        ok, message = ok_message
        if not ok:
            raise InvalidOptionError(message)

    @staticmethod
    def _parse_list(parser, text: str) -> List:
        try:
            return parser(text)
        except ValueError as e:
            raise InvalidOptionError(str(e)) from e

    # Commands

    def cmd_factor(self, args) -> int:
        store = MatrixStore(self.config.get_float_format())
        matrix = store.read_matrix_market(args.matrix)
        opts = self._factorize_options(args, args.alpha)

        start = time.perf_counter()
        f, stats = factorize(matrix, opts)
        DebugHelper.log_performance('factorize', start)

        prefix = FileHelper.output_prefix(args.matrix, args.output)
        paths = ExportService(self.config.get_float_format()).write_factors(prefix, f, stats, opts)

        print(FormatHelper.format_stats(stats.to_dict()))
        if args.check:
            print(_("fill_pct: {:.4f}").format(fill_percentage(f)))
            print(_("residual: {:.6e}").format(residual(matrix, f)))
        for name in ('L', 'B', 'P', 'stats'):
            print(_("wrote {}").format(paths[name]))
        return EXIT_OK

    def cmd_solve(self, args) -> int:
        store = MatrixStore(self.config.get_float_format())
        matrix = store.read_matrix_market(args.matrix)
        b = store.read_vector(args.rhs, expected=matrix.n)
        opts = self._factorize_options(args, args.alpha)

        start = time.perf_counter()
        f, _stats = factorize(matrix, opts)
        x = solve(f, b)
        DebugHelper.log_performance('factorize and solve', start)

        output = store.write_vector(FileHelper.solution_path(args.rhs, args.output), x)
        if args.verify:
            print(_("relative residual: {:.6e}").format(relative_residual(matrix, x, b)))
        print(_("wrote {}").format(output))
        return EXIT_OK

    def cmd_bench(self, args) -> int:
        sizes = (self._parse_list(ValidationHelper.parse_int_list, args.n)
                 if args.n is not None else self.config.get_bench_sizes())
        densities = (self._parse_list(ValidationHelper.parse_float_list, args.density)
                     if args.density is not None else self.config.get_bench_densities())
        alphas = (self._parse_list(ValidationHelper.parse_float_list, args.alpha)
                  if args.alpha is not None else [self.config.get_alpha()])
        self._check(ValidationHelper.validate_sizes(sizes))
        self._check(ValidationHelper.validate_densities(densities))
        self._check(ValidationHelper.validate_alphas(alphas))

        instances = args.instances if args.instances is not None else int(self.config.get('bench_instances', 20))
        seed = args.seed if args.seed is not None else int(self.config.get('bench_seed', 42))
        workers = args.workers if args.workers is not None else int(self.config.get('bench_workers', 1))
        if instances < 1:
            raise InvalidOptionError(_("--instances must be at least 1"))
        if workers < 1:
            raise InvalidOptionError(_("--workers must be at least 1"))

        service = BenchmarkService(
            self._factorize_options(args), workers,
            float(self.config.get('value_low', -1.0)), float(self.config.get('value_high', 1.0)),
        )
        start = time.perf_counter()
        report = service.run(sizes, densities, alphas, instances, seed,
                             baseline=args.baseline, timing=args.timing)
        DebugHelper.log_performance('bench', start)
        logger.info("bench: %d instances, mean fill %.2f%%, mean residual %.3e",
                    len(report.rows), report.mean_fill(), report.mean_residual())

        exporter = ExportService(self.config.get_float_format())
        print(exporter.render_report(report, 'txt'), end='')
        if args.csv:
            path = exporter.export_report(report, args.csv, 'csv')
            print(_("wrote {}").format(path))
        return EXIT_OK

    def cmd_generate(self, args) -> int:
        seed = args.seed if args.seed is not None else int(self.config.get('bench_seed', 42))
        if args.n < 1:
            raise InvalidOptionError(_("--n must be at least 1"))
        self._check(ValidationHelper.validate_densities([args.density]))

        spec = GenSpec(args.n, args.density, seed,
                       float(self.config.get('value_low', -1.0)), float(self.config.get('value_high', 1.0)))
        matrix = generate(spec)
        output = args.output or str(FileHelper.instance_filename('.', args.n, args.density, seed))
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        path = MatrixStore(self.config.get_float_format()).write_matrix_market(
            output, matrix, comment=f"generated n={spec.n} density={spec.density!r} seed={spec.seed}"
        )
        print(_("wrote {} (n={}, nnz={})").format(path, matrix.n, matrix.nnz))
        return EXIT_OK

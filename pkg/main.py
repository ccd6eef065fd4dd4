#!/usr/bin/env python3
"""
q-Deformed Modular Group Toolkit - Main Application

Command-line access to q-rationals, the operator algebra, the Tsallis series,
the numeric flows and every verification suite.
"""

from concurrent.futures import ProcessPoolExecutor
import logging
import sys
from typing import List, Optional

# Handle import errors gracefully
try:
    import click

    from core import Config, QDeformError, SUITE_NAMES, VerifyReport, run_suite
    from core.flows import FLOWS
    from core.lieverify import StructTable, format_combo
    from core.opalg import bracket, generator, in_basis
    from core.qrationals import FLAVORS, SHARP, even_cf, q_rational
    from core.rings import QXField, format_ratfunc
    from core.series import tsallis_series
    from core.suites import resolve
    from ui import UserInterface
    from utils import (
        ParseError,
        format_fraction,
        parse_complex,
        parse_fraction,
        parse_rational,
        parse_ratfunc,
    )
except ImportError as e:
    print(f"ERROR: Import error: {e}", file=sys.stderr)
    print("Please install requirements: pip install -r requirements.txt", file=sys.stderr)
    sys.exit(1)

logger = logging.getLogger(__name__)


class RationalType(click.ParamType):
    """A rational r/s (or inf) as a reduced (r, s) pair."""

    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_rational(value)
        except ParseError as e:
            self.fail(str(e), param, ctx)


class FractionType(click.ParamType):
    """A finite rational as a Fraction."""

    name = "fraction"

    def convert(self, value, param, ctx):
        try:
            return parse_fraction(str(value))
        except ParseError as e:
            self.fail(str(e), param, ctx)


class ComplexType(click.ParamType):
    """A complex number written re,im."""

    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ParseError as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalType()
FRACTION = FractionType()
COMPLEX = ComplexType()


class VerificationRunner:
    """Runs verification suites and reports them."""

    def __init__(self, config: Config, suites: List[str]):
        """Initialize the runner."""
        self.config = config
        self.suites = suites
        self.ui = UserInterface(config)
        self.reports: List[VerifyReport] = []

    def run(self) -> int:
        """Main application flow; returns the exit code."""
        try:
            return self._run_workflow()
        except KeyboardInterrupt:
            self.ui.handle_keyboard_interrupt()
            return 130

    def _run_workflow(self) -> int:
        """Validate, run every suite, report."""
        is_valid, error = self.config.validate()
        if not is_valid:
            self.ui.show_error(f"Configuration error: {error}")
            return 2

        if self.config.pretty:
            self.ui.show_header()
        self.ui.show_debug(f"Configuration:\n{self.config}")
        jobs = min(self.config.jobs, len(self.suites))
        params = self.config.suite_params()

        if jobs > 1:
            self.ui.show_debug(f"Running {len(self.suites)} suites on {jobs} processes")
            self._run_parallel(params, jobs)
        else:
            self._run_sequential(params)

        self.ui.show_summary(self.reports)
        return 0 if all(report.passed for report in self.reports) else 1

    def _run_sequential(self, params: dict) -> None:
        total = len(self.suites)
        for step, name in enumerate(self.suites, 1):
            if self.config.pretty:
                self.ui.show_step(step, total, f"Running {name}...")
            self._collect(run_suite(name, params))

    def _run_parallel(self, params: dict, jobs: int) -> None:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(run_suite, name, params) for name in self.suites]
            for future in futures:
                self._collect(future.result())

    def _collect(self, report: VerifyReport) -> None:
        self.reports.append(report)
        self.ui.show_report(report)


def _fail(ctx: click.Context, error: Exception) -> None:
    UserInterface(ctx.obj).show_error(str(error))
    ctx.exit(2)


@click.group()
@click.option('--verbose', is_flag=True, help='Debug logging on standard error.')
@click.pass_context
def cli(ctx, verbose):
    """q-deformed modular group: q-rationals, deformed Witt algebra, flows."""
    config = Config()
    config.debug = config.debug or verbose
    logging.basicConfig(
        level=logging.DEBUG if config.debug else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    ctx.obj = config


@cli.command()
@click.argument('rational', type=RATIONAL)
@click.option('--flavor', type=click.Choice(FLAVORS), default=SHARP, show_default=True)
@click.option('--at', 'at_q', type=FRACTION, default=None, help='Also evaluate at this q.')
@click.pass_context
def qrat(ctx, rational, flavor, at_q):
    """Right (sharp) or left (flat) q-deformation of RATIONAL."""
    r, s = rational
    try:
        result = q_rational(r, s, flavor).to_dict()
        if at_q is not None:
            result['at'] = str(at_q)
            result['value'] = format_fraction(q_rational(r, s, flavor).at(at_q))
    except QDeformError as e:
        _fail(ctx, e)
        return
    UserInterface(ctx.obj).show_json(result)


@cli.command()
@click.argument('rational', type=RATIONAL)
@click.pass_context
def cf(ctx, rational):
    """Even continued fraction of RATIONAL."""
    r, s = rational
    try:
        terms = even_cf(r, s).to_list()
    except QDeformError as e:
        _fail(ctx, e)
        return
    UserInterface(ctx.obj).show_json(terms)


@cli.group()
def op():
    """Operators D_n acting on Q(q)(x)."""


@op.command('bracket')
@click.argument('i', type=int)
@click.argument('j', type=int)
@click.option('--window', type=int, default=None, help='Structure table window.')
@click.pass_context
def op_bracket(ctx, i, j, window):
    """[D_I, D_J] as an operator and in the D basis."""
    config = ctx.obj.override(window=window)
    try:
        table = StructTable(config.window)
        combo = table.coefficients(i, j)
        actual = bracket(generator(i), generator(j))
    except QDeformError as e:
        _fail(ctx, e)
        return
    UserInterface(config).show_json({
        'bracket': str(actual),
        'decomposition': format_combo(combo),
        'matches': actual == in_basis(combo),
    })


@op.command('apply')
@click.argument('n', type=int)
@click.argument('expr')
@click.option('--window', type=int, default=None, help='Largest |N| is three times the window.')
@click.pass_context
def op_apply(ctx, n, expr, window):
    """Apply D_N to the rational function EXPR of q and x."""
    config = ctx.obj.override(window=window)
    if abs(n) > 3 * config.window:
        raise click.BadParameter(f"|N| must be at most {3 * config.window}", param_hint='N')
    try:
        f = parse_ratfunc(expr, QXField)
    except ParseError as e:
        raise click.BadParameter(str(e), param_hint='EXPR')
    try:
        result = generator(n)(f)
    except QDeformError as e:
        _fail(ctx, e)
        return
    UserInterface(config).show_value(format_ratfunc(result))


@cli.group()
def series():
    """Truncated power series."""


@series.command('tsallis')
@click.option('--order', type=int, default=None, help='Truncation order.')
@click.option('--at-q', 'at_q', type=FRACTION, default=None, help='Specialize q.')
@click.pass_context
def series_tsallis(ctx, order, at_q):
    """Coefficients of the Tsallis exponential."""
    config = ctx.obj.override(order=order)
    try:
        E = tsallis_series(config.order)
        if at_q is not None:
            E = E.specialize(at_q)
    except QDeformError as e:
        _fail(ctx, e)
        return
    UserInterface(config).show_json({'order': E.order, 'coefficients': E.to_list()})


@cli.command()
@click.argument('kind', type=click.Choice(sorted(FLOWS)))
@click.option('--q', 'q_value', type=FRACTION, required=True, help='Deformation parameter a/b.')
@click.option('--t', 't_value', type=float, required=True, help='Flow time.')
@click.option('--x', 'x_value', type=COMPLEX, default=None, help='Starting point re,im.')
@click.pass_context
def flow(ctx, kind, q_value, t_value, x_value):
    """Flow of D_-1 (dm1), D_0 (d0) or D_1 (d1) as a matrix or an image point."""
    matrix = FLOWS[kind](t_value, float(q_value))
    ui = UserInterface(ctx.obj)
    if x_value is None:
        ui.show_json(matrix.to_dict())
        return
    image = complex(matrix.apply(x_value))
    ui.show_json({'point': [image.real, image.imag]})


@cli.command()
@click.argument('suite', type=click.Choice(SUITE_NAMES + ['all']))
@click.option('--window', type=int, default=None, help='Index window W.')
@click.option('--order', type=int, default=None, help='Tsallis series order.')
@click.option('--seed', type=int, default=None, help='Seed of the randomized checks.')
@click.option('--jobs', type=int, default=None, help='Worker processes (1 runs sequentially).')
@click.option('--corpus', type=int, default=None, help='Bound on |r| and s for q-rationals.')
@click.option('--pretty', is_flag=True, default=False, help='Human-readable tables.')
@click.option('--tol-group', type=float, default=None)
@click.option('--tol-generator', type=float, default=None)
@click.option('--tol-taylor', type=float, default=None)
@click.option('--tol-fixed', type=float, default=None)
@click.pass_context
def verify(ctx, suite, **options):
    """Run SUITE (or all) and emit one JSON report per suite."""
    options['pretty'] = options['pretty'] or None
    config = ctx.obj.override(**options)
    runner = VerificationRunner(config, resolve(suite))
    ctx.exit(runner.run())


def main(argv: Optional[List[str]] = None):
    """Entry point for the application."""
    cli.main(args=argv, prog_name="qdeform")


if __name__ == "__main__":
    main()

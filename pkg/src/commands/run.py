"""The batch commands. Each takes a RunConfig, writes its files into
`config.out` and returns the process exit code."""

import logging

import numpy as np

from approx.grids import GridSpec
from chordal.sequence import chordal_approx, classify_limit
from commands import output
from commands.config import ConfigError
from expr.parser import parse
from geometry.catalog import format_domain, parse_domain
from geometry.hypotheses import check_hypotheses
from lift.lift import LiftRequest, lift
from series.rules import RuleBound, parse_bound
from series.tail import (
    SeriesFunction, certified_prefix, counterexample_directional, restrict_to_finite, select_finite_support,
)
from utils import lua as lua_utils


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_CONFIG = 3
EXIT_HYPOTHESIS = 4

LIFT_PROBE_POINTS = 20


def _expression(config):
    if config.f is None:
        raise ConfigError("This command needs an expression `f`")
    return parse(config.f)


def _domain(config, variables=()):
    try:
        return parse_domain(config.domain, sorted(variables), resolution=config.resolution)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _series(config):
    spec = config.series
    bound = spec['bound']
    if lua_utils.is_function(bound):
        bound = RuleBound(bound, 'lua rule')
    else:
        try:
            bound = parse_bound(str(bound))
        except ValueError as e:
            raise ConfigError(str(e)) from e
    horizon = spec.get('horizon')
    return SeriesFunction(spec['term'], bound, horizon=None if horizon is None else int(horizon))


def cmd_check_domain(config):
    """Check the hypotheses of every factor; exit 4 if any fails."""
    pd = _domain(config)
    reports = []
    for var, domain in pd.factors:
        report = check_hypotheses(domain, config.resolution)
        logger.info("z%d %s: %s", var, domain.to_config(), 'pass' if report.passed else 'fail')
        reports.append(dict(report.to_dict(), variable=f'z{var}'))
    output.write_json(config.out, 'hypotheses.json', reports)
    return EXIT_OK if all(r['passed'] for r in reports) else EXIT_HYPOTHESIS


def cmd_lift(config):
    """Lift `f` (or a reduced series) and write the polynomial and report."""
    tail = None
    if config.f is None and config.series is not None:
        series = _series(config)
        series_epsilon = config.series.get('epsilon', config.epsilon)
        support, tail = select_finite_support(series, series_epsilon)
        prefix, _ = certified_prefix(series, series_epsilon)
        f = restrict_to_finite(series, support, prefix=prefix)
        epsilon = config.epsilon / 2
        logger.info("series reduced to %d variables (tail bound %g)", len(support), tail)
    else:
        f = _expression(config)
        epsilon = config.epsilon
    pd = _domain(config, f.free_vars)
    grid = GridSpec.for_dimension(len(pd), validation_factor=config.validate_density)
    report = lift(LiftRequest(f, pd, config.n, epsilon, grid=grid, probe=LIFT_PROBE_POINTS, seed=config.seed))
    data = dict(report.to_dict(), domain=format_domain(pd))
    if tail is not None:
        data['series_tail_bound'] = tail
    output.write_poly(config.out, 'lift.poly.json', report.poly)
    output.write_json(config.out, 'lift.report.json', data)
    output.write_csv(config.out, 'lift.errors.csv', ['order', 'error'], data['errors'])
    output.write_csv(config.out, 'lift.ledger.csv',
                     ['path', 'variables', 'allocated', 'achieved', 'method', 'degrees', 'met'],
                     [dict(row, variables=' '.join(row['variables']), degrees=' '.join(map(str, row['degrees'])))
                      for row in data['ledger']])
    return EXIT_OK if report.success else EXIT_BUDGET


def cmd_chordal(config):
    """Build the chordal sequence for `f` (or 'inf') over the schedule."""
    if not config.schedule:
        raise ConfigError("cmd_chordal needs a non-empty `schedule`")
    if config.f is not None and config.f.strip() == 'inf':
        f, variables = 'inf', ()
    else:
        f = _expression(config)
        variables = f.free_vars
    pd = _domain(config, variables)
    seq = chordal_approx(f, pd, config.schedule)
    rows = list(seq.rows())
    output.write_csv(config.out, 'chordal.schedule.csv',
                     ['n', 'radius', 'target', 'fit_error', 'chordal_error', 'uniform_error', 'degree'], rows)
    for row, p in zip(rows, seq.polys):
        output.write_poly(config.out, f'chordal.P{row["n"]}.poly.json', p)
    summary = {'rows': rows, 'met': seq.met}
    if len(seq) >= 2:
        summary['limit'] = classify_limit(seq.polys, pd, threshold=config.thresholds['infinity'],
                                          tolerance=config.thresholds['cauchy'])
    output.write_json(config.out, 'chordal.summary.json', _finite_json(summary))
    return EXIT_OK if seq.met else EXIT_BUDGET


def _finite_json(value):
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite_json(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_finite_json(v) for v in value]
    return value


def cmd_counterexample(config):
    """Tabulate the unbounded directional derivative for each m."""
    ms = config.m or (1, 10, 100, 1000, 10000)
    rows = [{'m': m, 'value': counterexample_directional(m)} for m in ms]
    output.write_csv(config.out, 'counterexample.csv', ['m', 'value'], rows)
    return EXIT_OK


COMMANDS = {
    'check-domain': cmd_check_domain,
    'lift': cmd_lift,
    'chordal': cmd_chordal,
    'counterexample': cmd_counterexample,
}

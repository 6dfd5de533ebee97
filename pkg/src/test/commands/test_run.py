import csv
import json
import math

import pytest

from commands.config import ConfigError, RunConfig
from commands.run import (
    EXIT_BUDGET, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_OK,
    cmd_check_domain, cmd_chordal, cmd_counterexample, cmd_lift,
)
import main
import poly.records
import utils.settings


def make_config(tmp_path, **kwargs):
    kwargs.setdefault('resolution', 0.02)
    return RunConfig(out=str(tmp_path), **kwargs).merged()


def read_csv(path):
    with open(path, newline='') as f:
        return list(csv.DictReader(f))


def read_json(path):
    with open(path) as f:
        return json.load(f)


def test_counterexample(tmp_path):
    config = make_config(tmp_path, m=(1, 10, 10000))
    assert cmd_counterexample(config) == EXIT_OK
    rows = read_csv(tmp_path / 'counterexample.csv')
    assert [int(row['m']) for row in rows] == [1, 10, 10000]
    values = [float(row['value']) for row in rows]
    assert values[0] == 1.0
    assert values[1] == pytest.approx(2.354, abs=1e-3)
    assert values[2] > 8


def test_counterexample_defaults(tmp_path):
    assert cmd_counterexample(make_config(tmp_path)) == EXIT_OK
    values = [float(row['value']) for row in read_csv(tmp_path / 'counterexample.csv')]
    assert len(values) == 5
    assert all(a < b for a, b in zip(values, values[1:]))


def test_check_domain(tmp_path):
    config = make_config(tmp_path, domain='z1 disc 0 0 1\nz2 rect 0 0 1 1\n')
    assert cmd_check_domain(config) == EXIT_OK
    reports = read_json(tmp_path / 'hypotheses.json')
    assert [r['variable'] for r in reports] == ['z1', 'z2']
    assert all(r['passed'] for r in reports)
    assert 1.8 < reports[0]['path_bound'] < 2.2
    assert 'h=0.02' in reports[0]['note']


def test_check_domain_annulus(tmp_path):
    config = make_config(tmp_path, domain='z1 disc 0 0 1\nz2 annulus 0 0 0.3 1\n')
    assert cmd_check_domain(config) == EXIT_HYPOTHESIS
    reports = read_json(tmp_path / 'hypotheses.json')
    assert [r['passed'] for r in reports] == [True, False]
    assert reports[1]['complement_components'] == 2


def test_lift_polynomial(tmp_path):
    config = make_config(tmp_path, domain='default disc 0 0 0.5', f='z1^2 * z2 + 3 * z1', n=1, epsilon=1e-6)
    assert cmd_lift(config) == EXIT_OK
    report = read_json(tmp_path / 'lift.report.json')
    assert report['success']
    assert report['variables'] == ['z1', 'z2']
    assert report['domain'] == 'z1 disc 0.0 0.0 0.5\nz2 disc 0.0 0.0 0.5'
    assert [row['order'] for row in report['errors']] == ['a(0,0)', 'a(0,1)', 'a(1,0)', 'a(1,1)']
    assert report['max_error'] <= 1e-10
    with open(tmp_path / 'lift.poly.json') as f:
        p = poly.records.loads(f.read())
    assert abs(p.coefficient({1: 2, 2: 1}) - 1) <= 1e-10
    assert abs(p.coefficient({1: 1}) - 3) <= 1e-10
    errors = read_csv(tmp_path / 'lift.errors.csv')
    assert len(errors) == 4
    ledger = read_csv(tmp_path / 'lift.ledger.csv')
    assert ledger and all(row['met'] == 'True' for row in ledger)


def test_lift_is_deterministic(tmp_path):
    kwargs = dict(domain='default disc 0 0 0.5', f='exp(z1) * z2', n=1, epsilon=1e-4, seed=3)
    outputs = []
    for name in ('a', 'b'):
        assert cmd_lift(make_config(tmp_path / name, **kwargs)) == EXIT_OK
        outputs.append({
            path.name: path.read_bytes() for path in sorted((tmp_path / name).iterdir())
        })
    assert outputs[0] == outputs[1]
    assert set(outputs[0]) == {'lift.errors.csv', 'lift.ledger.csv', 'lift.poly.json', 'lift.report.json'}


def test_lift_unreachable(tmp_path, monkeypatch):
    monkeypatch.setenv(utils.settings.MAX_DEGREE_ENV, '8')
    config = make_config(tmp_path, domain='z1 disc 0 0 0.5', f='exp(z1)', epsilon=1e-15)
    assert cmd_lift(config) == EXIT_BUDGET
    report = read_json(tmp_path / 'lift.report.json')
    assert not report['success']
    assert report['errors'][0]['error'] > 1e-15


def test_lift_series(tmp_path):
    series = {'term': 'z{n}^{n} / {n}^2', 'bound': 'pseries 2', 'horizon': 2}
    config = make_config(tmp_path, domain='default disc 0 0 1', series=series, epsilon=1e-3)
    assert cmd_lift(config) == EXIT_OK
    report = read_json(tmp_path / 'lift.report.json')
    assert report['variables'] == ['z1', 'z2']
    assert report['series_tail_bound'] == 0
    assert report['epsilon'] == 5e-4


def test_lift_needs_expression(tmp_path):
    with pytest.raises(ConfigError):
        cmd_lift(make_config(tmp_path, domain='default disc 0 0 1'))
    with pytest.raises(ConfigError):
        cmd_lift(make_config(tmp_path, domain='z1 disc 0 0 1', f='z2'))


def test_chordal_infinity(tmp_path):
    config = make_config(tmp_path, domain='z1 disc 0 0 1', f='inf', schedule=(1, 1, 1, 1))
    assert cmd_chordal(config) == EXIT_OK
    rows = read_csv(tmp_path / 'chordal.schedule.csv')
    errors = [float(row['chordal_error']) for row in rows]
    assert errors == pytest.approx([1 / math.sqrt(1 + n * n) for n in range(1, 5)])
    assert all(row['uniform_error'] == 'inf' for row in rows)
    summary = read_json(tmp_path / 'chordal.summary.json')
    assert summary['met']
    assert summary['rows'][0]['uniform_error'] is None
    assert summary['limit'] == 'undetermined'
    assert (tmp_path / 'chordal.P4.poly.json').exists()


def test_chordal_constant(tmp_path):
    config = make_config(tmp_path, domain='z1 disc 0 0 1', f='5', schedule=(0.1, 0.01))
    assert cmd_chordal(config) == EXIT_OK
    rows = read_csv(tmp_path / 'chordal.schedule.csv')
    assert [float(row['chordal_error']) for row in rows] == [0.0, 0.0]
    assert read_json(tmp_path / 'chordal.summary.json')['limit'] == 'finite'


def test_chordal_needs_schedule(tmp_path):
    with pytest.raises(ConfigError):
        cmd_chordal(make_config(tmp_path, domain='z1 disc 0 0 1', f='inf'))


def run_main(tmp_path, command, source, *flags):
    path = tmp_path / 'run.lua'
    path.write_text(source)
    args = main.build_parser().parse_args(
        [command, '--config', str(path), '--out', str(tmp_path / 'out'), *flags])
    return main.run(args)


def test_main_exit_codes(tmp_path, monkeypatch):
    assert run_main(tmp_path, 'counterexample', 'm = {1, 2}') == EXIT_OK
    assert run_main(tmp_path, 'check-domain', 'domain = "z1 annulus 0 0 0.3 1"', '--resolution', '0.02') == EXIT_HYPOTHESIS
    assert run_main(tmp_path, 'lift', 'f = "exp(z1"\ndomain = "z1 disc 0 0 1"') == EXIT_CONFIG
    assert run_main(tmp_path, 'lift', 'f = "z1"\ndomain = "z1 blob"') == EXIT_CONFIG
    assert run_main(tmp_path, 'chordal', 'f = "z1"\ndomain = "z1 rect 0 0 1 1"\nschedule = 0.1') == EXIT_CONFIG
    assert run_main(tmp_path, 'lift', 'n = -1') == EXIT_CONFIG
    assert run_main(tmp_path, 'counterexample', '', '--validate-density', '1') == EXIT_CONFIG
    monkeypatch.setenv(utils.settings.MAX_DEGREE_ENV, '4')
    source = 'f = "1 / (1 - z1)"\ndomain = "z1 disc 0 0 1"\nschedule = {1e-9}'
    assert run_main(tmp_path, 'chordal', source) == EXIT_BUDGET


def test_main_flags(tmp_path):
    assert main.main(['counterexample', '--out', str(tmp_path)]) == EXIT_OK
    assert (tmp_path / 'counterexample.csv').exists()
    assert main.main(['--version']) == 0

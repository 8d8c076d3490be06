# -*- coding: utf-8 -*-

"""Test the command line interface."""

import json

import pytest
from click.testing import CliRunner

from mcgz2.cli import main, run_command
from .constants import FULL_ORDER, XI_ORDER


def test_chitable():
    """The first graph's table passes its recorded values."""
    status, report = run_command(['chitable', '--graph', 'gamma1'])
    assert status == 0
    values = {row['expression']: row['chi'] for row in report.results}
    assert values['c_2'] == 0
    assert values['B_3'] == 1
    assert values['Phi(0,0)(B_1)'] == 1


def test_chi():
    """Single expressions are evaluated."""
    status, report = run_command(['chi', '--graph', 'gamma2', 'a_1 + a_2', 'B_4'])
    assert status == 0
    assert [row['chi'] for row in report.results] == [0, 1]


def test_order_with_extra(tmpdir):
    """Adjoining d to the twists of xi(0,0) gives all of Sp(10, 2)."""
    status, report = run_command(['order', '--gens', 'xi(0,0)', '--extra', 'd', '--cache', str(tmpdir)])
    assert status == 0
    assert report.results[0]['order'] == str(FULL_ORDER)
    assert report.cache['misses'] == 1


def test_order_expectation_failure():
    """A wrong expected order exits with status 1."""
    status, report = run_command(['order', '--gens', 'xi(0,0)', '--expect', '1', '--no-cache'])
    assert status == 1
    assert report.results[0]['order'] == str(XI_ORDER)
    assert [check.name for check in report.failures] == ['order is 1']


def test_member():
    """The c_2 twist is not in the group of xi(0,0)."""
    status, report = run_command(['member', '--gens', 'xi(0,0)', '--target', 'c_2', '--expect', 'false', '--no-cache'])
    assert status == 0
    assert report.results[0]['contained'] is False


def test_distinguish_json():
    """The JSON certificate for xi(0,0) and xi(1,0) names the second graph and Phi(0,0)(B_1)."""
    runner = CliRunner()
    result = runner.invoke(main, ['distinguish', '0,0', '1,0', '--format', 'json'])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output[result.output.index('{'):])
    first = data['results'][0]
    assert first['graph'] == 'gamma2'
    assert first['excluded'] == 'Phi(0,0)(B_1)'


def test_distinguish_negative_parameters():
    """Negative pairs are passed after ``--``."""
    status, report = run_command(['distinguish', '--', '-1,0', '0,2'])
    assert status == 0
    assert report.results[0]['graph'] == 'gamma1'


def test_euler():
    """Euler characteristics of xi and Y."""
    assert run_command(['euler', 'xi(0,0)', '--expect', '24'])[0] == 0
    assert run_command(['euler', 'Y(0,0;1,1)', '--expect', '64'])[0] == 0


def test_identity():
    """A named identity sweep passes."""
    status, report = run_command(['identity', 'key3', '--krange', '2'])
    assert status == 0
    assert len(report.results) == 3 * 5


def test_script():
    """The shift-q script replays."""
    status, report = run_command(['script', 'shift-q', '--params', '1,0'])
    assert status == 0
    assert report.results[0]['matched'] is True


def test_validate():
    """The shipped registry validates."""
    status, report = run_command(['validate'])
    assert status == 0, [check.name for check in report.failures]


def test_exclusions():
    """Recomputed exclusions match the recorded ones."""
    status, _ = run_command(['exclusions'])
    assert status == 0


def test_registry_listing():
    """The registry lists every curve, and factorization letters can be listed."""
    status, report = run_command(['registry', '--format', 'csv'])
    assert status == 0
    assert any(row['name'] == 'd' and row['class'] == '1100000000' for row in report.results)
    status, report = run_command(['registry', '--letters', 'eta^2'])
    assert len(report.results) == 20


@pytest.mark.parametrize('argv', [
    ['chi', 'a_1 + + a_2'],
    ['chi', 'z_9'],
    ['chi', '--graph', 'gamma9', 'a_1'],
    ['euler', 'xi(1)'],
    ['distinguish', '0', '1,0'],
    ['script', 'no-such-script'],
    ['chitable', '--registry', '/nonexistent/registry.json'],
])
def test_usage_errors(argv):
    """Syntax errors, unknown names, arity errors and configuration errors exit with status 2."""
    status, report = run_command(argv)
    assert status == 2
    assert report is None


def test_failed_validation_names_items(tmpdir, registry):
    """A registry with a wrong d fails validation and names the broken relations."""
    data = registry.to_json()
    data['curves']['d'] = data['curves']['a_1']
    path = tmpdir.join('registry.json')
    path.write(json.dumps(data))
    status, report = run_command(['validate', '--registry', str(path)])
    assert status == 1
    names = {check.name for check in report.failures}
    assert 'relation k01-B_1' in names
    assert 'd satisfies its pairing and graph constraints' in names


def test_nuke(tmpdir):
    """The cache can be dropped without a prompt."""
    result = CliRunner().invoke(main, ['nuke', '--cache', str(tmpdir), '-y'])
    assert result.exit_code == 0, result.output


def test_certificate():
    """A certificate graph is found for the parity (1,1) and the pinned graph verifies."""
    status, report = run_command(['certificate', '--host', '1,1'])
    assert status == 0, [check.name for check in report.failures]
    assert {row['graph'] for row in report.results} == {'found', 'gamma4'}


def test_sweep():
    """A short randomized sweep passes every check."""
    status, report = run_command(['sweep', '--trials', '3', '--moves', '10', '--seed', '1', '--no-cache'])
    assert status == 0, [check.name for check in report.failures]
    assert report.inputs['seed'] == 1

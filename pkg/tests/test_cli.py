import json
from pathlib import Path

import pytest

from brtjurina import identities
from brtjurina.cli import run_cli
from brtjurina.identities import FAILS, IdentityReport


DATA = Path(__file__).resolve().parent.parent / 'data'


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.timeout(60)
def test_verify_example_3_2(capsys):
    code, out, _ = run(capsys, 'verify', 'example-3-2',
                       '--identity', 'theorem-a', '--json', '--quiet')
    assert code == 0
    report = json.loads(out)
    assert report['case'] == 'example-3-2'
    theorem = report['identities']['theorem-a']
    assert theorem['status'] == 'holds'
    assert theorem['residuals'] == {'theorem_a': 0}
    assert theorem['terms']['tau_BR'] == 5
    assert report['invariants'] == {}


def test_verify_text_output(capsys):
    code, out, _ = run(capsys, 'verify', 'pq-family', '--lambda', '2',
                       '--identity', 'theorem-a', '--quiet')
    assert code == 0
    assert 'theorem-a' in out
    assert 'holds' in out


def test_table_m_family(capsys):
    argv = ['table', 'm-family', '--m-min', '1', '--m-max', '4', '--json',
            '--quiet']
    code, out, _ = run(capsys, *argv)
    assert code == 0
    rows = json.loads(out)
    assert [(r['m'], r['mu_BR'], r['tau_BR']) for r in rows] == [
        (1, 6, 6), (2, 20, 17), (3, 42, 34), (4, 72, 57)]
    assert [r['rf'] for r in rows] == [1, 2, 2, 2]
    assert rows[1]['ratio'] == {'numerator': 20, 'denominator': 17}
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_table_text_and_csv(capsys, tmp_path):
    path = tmp_path / 'm_family.csv'
    code, out, _ = run(capsys, 'table', 'm-family', '--m-min', '1',
                       '--m-max', '2', '--csv', str(path), '--quiet')
    assert code == 0
    assert out.splitlines()[0].split() == [
        'm', 'mu_BR', 'tau_BR', 'mu_BR/tau_BR', 'r_f']
    lines = path.read_text().splitlines()
    assert lines[0] == 'm,mu_BR,tau_BR,ratio,rf'
    assert lines[2] == '2,20,17,20/17,2'


def test_table_rejects_bad_range(capsys):
    code, _, err = run(capsys, 'table', 'm-family', '--m-min', '3',
                       '--m-max', '2')
    assert code == 3
    assert 'm-min' in err


def test_compute_hypothesis_rejection(capsys, tmp_path):
    path = tmp_path / 'bad_v.case'
    path.write_text('ring x, y;\nX: y^2 - x^3;\nV: x + y;\n'
                    'omega: coeffs(y, 2*x);\n')
    code, out, err = run(capsys, 'compute', str(path),
                         '--invariant', 'tau0_omega_V')
    assert code == 1
    assert out == ''
    assert 'dx^dy' in err


def test_compute_skips_inapplicable_invariants(capsys, tmp_path):
    path = tmp_path / 'bad_v.case'
    path.write_text('ring x, y;\nX: y^2 - x^3;\nV: x + y;\n'
                    'omega: coeffs(y, 2*x);\n')
    code, out, _ = run(capsys, 'compute', str(path), '--json', '--quiet')
    assert code == 0
    report = json.loads(out)
    assert report['invariants']['tau_BR'] is None
    assert 'tau_BR' in report['skipped']
    assert report['invariants']['mu0'] == 1
    assert report['flags'] == {'v_invariant': False, 'x_invariant': False}


def test_verify_x_invariant_case(capsys):
    code, _, err = run(capsys, 'verify', str(DATA / 'x-invariant.case'),
                       '--identity', 'theorem-a')
    assert code == 1
    assert 'not invariant' in err


def test_failed_identity_exits_with_2(capsys, monkeypatch):
    def failing(comp):
        return IdentityReport('theorem-a', FAILS, {'theorem_a': 1})

    monkeypatch.setitem(identities.VERIFIERS, 'theorem-a', failing)
    code, out, err = run(capsys, 'verify', 'example-3-2',
                         '--identity', 'theorem-a', '--json', '--quiet')
    assert code == 2
    assert json.loads(out)['identities']['theorem-a']['status'] == 'fails'
    assert 'identity check failed' in err


@pytest.mark.parametrize('argv', [
    ['compute'],
    ['frobnicate', 'example-3-2'],
    ['compute', 'example-3-2', '--invariant', 'milnor'],
    ['compute', 'no/such/file.case'],
    ['compute', 'pq-family', '--lambda', 'abc'],
    ['compute', 'm-family', '--param', 'm=0'],
    ['compute', 'm-family', '--rf-cap', '0'],
    ['case', 'emit', 'cubic'],
])
def test_input_errors_exit_with_3(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3
    assert out == ''
    assert err


def test_syntax_error_reports_position(capsys, tmp_path):
    path = tmp_path / 'broken.case'
    path.write_text('ring x, y;\nX: x^(2);\n')
    code, _, err = run(capsys, 'compute', str(path))
    assert code == 3
    assert 'line 2' in err


def test_case_emit_then_compute_matches_builtin(capsys, tmp_path):
    code, text, _ = run(capsys, 'case', 'emit', 'm-family', 'm=1')
    assert code == 0
    path = tmp_path / 'm-family.case'
    path.write_text(text)
    args = ['--invariant', 'mu_BR', '--invariant', 'tau_BR', '--json',
            '--quiet']
    _, from_file, _ = run(capsys, 'compute', str(path), *args)
    _, builtin, _ = run(capsys, 'compute', 'm-family', '--param', 'm=1', *args)
    assert from_file == builtin
    assert json.loads(builtin)['invariants'] == {'mu_BR': 6, 'tau_BR': 6}


def test_lambda_sweep_emits_array(capsys):
    code, out, _ = run(capsys, 'compute', 'pq-family', '--lambda', '2',
                       '--lambda', '5', '--invariant', 'tau_BR', '--json',
                       '--quiet')
    assert code == 0
    reports = json.loads(out)
    assert [r['options']['lambda'] for r in reports] == ['2', '5']
    assert [r['invariants']['tau_BR'] for r in reports] == [5, 5]


def test_rf_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv('SAITO_RF_CAP', '1')
    code, out, _ = run(capsys, 'compute', 'm-family', '--param', 'm=2',
                       '--invariant', 'rf', '--json', '--quiet')
    assert code == 0
    report = json.loads(out)
    assert report['invariants']['rf'] == '>=2'
    assert report['options']['rf_cap'] == 1
    _, out, _ = run(capsys, 'compute', 'm-family', '--param', 'm=2',
                    '--invariant', 'rf', '--rf-cap', '3', '--json',
                    '--quiet')
    assert json.loads(out)['invariants']['rf'] == 2
    monkeypatch.setenv('SAITO_RF_CAP', 'many')
    code, _, _ = run(capsys, 'compute', 'm-family', '--invariant', 'rf')
    assert code == 3


def test_config_file(capsys, tmp_path):
    config = tmp_path / 'config.json'
    config.write_text(json.dumps({'rf_cap': 1, 'lambda_values': ['5']}))
    code, out, _ = run(capsys, 'compute', 'm-family', '--param', 'm=2',
                       '--invariant', 'rf', '--config_path', str(config),
                       '--json', '--quiet')
    assert code == 0
    assert json.loads(out)['invariants']['rf'] == '>=2'
    _, out, _ = run(capsys, 'compute', 'pq-family', '--invariant', 'mu0',
                    '--config_path', str(config), '--json', '--quiet')
    assert json.loads(out)['options']['lambda'] == '5'


def test_help_exits_cleanly(capsys):
    code, out, _ = run(capsys, '--help')
    assert code == 0
    assert 'compute' in out

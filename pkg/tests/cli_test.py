import json

import pytest

from hofree import cli
from hofree.acceptance import CriterionResult
from hofree.finite_n import FiniteNTable
from hofree.multfn import MultFn
from hofree.serializer import Serializer


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_count(capsys):
    assert run(capsys, 'count', '--profile', '2,2') == (cli.EXIT_OK, '18\n')
    assert run(capsys, 'count', '--profile', '1,2', '--brute-force') == (cli.EXIT_OK, '4\n')


def test_moebius(capsys):
    assert run(capsys, 'moebius', '--diagram', '2') == (cli.EXIT_OK, '-1\n')
    assert run(capsys, 'moebius', '--diagram', '2,1', '--method', 'geometric') == (cli.EXIT_OK, '-4\n')
    code, out = run(capsys, 'moebius', '--up-to', '3')
    assert code == cli.EXIT_OK
    assert {'diagram': [3], 'value': '2/1'} in json.loads(out)


def test_haar_moment(capsys):
    assert run(capsys, 'haar-moment', '--pattern', '|u11|^4', '--N', '5') == (cli.EXIT_OK, '1/15\n')
    code, _ = run(capsys, 'haar-moment', '--pattern', '|u11|^4', '--N', '5', '--n', '3')
    assert code == cli.EXIT_PRECONDITION


def test_wg(capsys):
    code, out = run(capsys, 'wg', '--n', '2', '--N', '3', '--full')
    assert code == cli.EXIT_OK
    assert json.loads(out)['wg'] == {'(2)': '-1/24', '(1,1)': '1/8'}


def test_convolve_named_tables(capsys):
    code, out = run(capsys, 'convolve', '--f', 'moebius', '--g', 'zeta', '--up-to', '3')
    assert code == cli.EXIT_OK
    assert MultFn.from_list(json.loads(out)) == MultFn.delta(3)
    code, _ = run(capsys, 'convolve', '--f', 'zeta', '--g', 'delta')
    assert code == cli.EXIT_PRECONDITION


def test_factorize(capsys):
    code, out = run(capsys, 'factorize', '--blocks', '{1,2}', '--perm', '(1,2)')
    assert code == cli.EXIT_OK
    assert len(json.loads(out)) == 2
    code, _ = run(capsys, 'factorize', '--profile', '2', '--perm', '(1,2)')
    assert code == cli.EXIT_PARSE


def test_series_commands(capsys):
    code, out = run(capsys, 'c2m', '--preset', 'semicircle', '--trunc', '6')
    assert code == cli.EXIT_OK
    assert json.loads(out)['first']['coeffs']['(6)'] == '5/1'
    code, out = run(capsys, 'series2', '--preset', 'free-poisson:2', '--trunc', '6', '--point', '1/10,1/20')
    assert code == cli.EXIT_OK
    assert json.loads(out)['cauchy_residual_zero'] is True
    assert run(capsys, 'c2m', '--preset', 'cauchy')[0] == cli.EXIT_PARSE
    assert run(capsys, 'series2', '--preset', 'semicircle', '--point', '1')[0] == cli.EXIT_PARSE


def test_series_from_file(capsys, tmp_path):
    path = tmp_path / 'series.json'
    Serializer().dump({'first': {'trunc': 4, 'coeffs': {'(0)': '1/1', '(2)': '1/1'}}}, str(path))
    code, out = run(capsys, 'c2m', '--input', str(path))
    assert code == cli.EXIT_OK
    assert json.loads(out)['first']['coeffs']['(4)'] == '2/1'


def test_finite_n_writes_output(capsys, tmp_path):
    serializer = Serializer()
    kappa = FiniteNTable(7, MultFn.random(5, 3), 'kappa')
    source, target = tmp_path / 'kappa.json', tmp_path / 'phi.json'
    serializer.dump(kappa.to_dict(), str(source))
    code, out = run(capsys, 'finite-n', '--input', str(source), '-o', str(target))
    assert (code, out) == (cli.EXIT_OK, '')
    phi = FiniteNTable.from_dict(serializer.load(str(target)))
    assert phi.kind == 'phi'
    assert phi.N == 7


def test_input_errors(capsys, tmp_path):
    assert run(capsys, 'count', '--profile', 'two')[0] == cli.EXIT_PARSE
    assert run(capsys, 'moebius', '--diagram', '9')[0] == cli.EXIT_PRECONDITION
    assert run(capsys, 'convolve', '--f', str(tmp_path / 'missing.json'), '--g', 'zeta')[0] == cli.EXIT_PARSE
    assert run(capsys, 'count', '--profile', '2', '--threads', 'many')[0] == cli.EXIT_PARSE
    with pytest.raises(SystemExit):
        cli.main(['count'])


def test_check_failure_exit_code(capsys, monkeypatch):
    def fake_suite(suite, config, quick):
        return [CriterionResult(1, 'Moebius values', True, 'fine'), CriterionResult(2, 'unit identity', False, 'bad')]

    monkeypatch.setattr('hofree.commands.check.run_suite', fake_suite)
    code, out = run(capsys, 'check', '--suite', 'exact')
    assert code == cli.EXIT_ACCEPTANCE
    assert out.splitlines() == ['criterion 1 (Moebius values): PASS - fine',
                                'criterion 2 (unit identity): FAIL - bad']


@pytest.mark.montecarlo
def test_simulate_haar(capsys):
    code, out = run(capsys, 'simulate', '--quantity', 'haar', '--pattern', '|u11|^2', '--n', '4',
                    '--samples', '2000', '--threads', '2', '--tolerance', '5')
    assert code == cli.EXIT_OK
    lines = out.splitlines()
    assert lines[0] == 'quantity,N,S,estimate,std_err,prediction,provenance,z'
    assert len(lines) == 2

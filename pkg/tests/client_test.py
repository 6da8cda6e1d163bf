# pylint: disable=redefined-outer-name
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

import hofree
from hofree.commands.combinatorics import parse_count
from hofree.exceptions import AcceptanceError, BoundExceededError, PreconditionError
from hofree.finite_n import FiniteNTable
from hofree.multfn import MultFn
from hofree.ps import pp_full
from hofree.series import Series2
from hofree.transforms import semicircle


@pytest.mark.asyncio()
async def test_count(calc):
    result = await calc.count((2, 2), brute_force=True)
    assert result['count'] == 18
    assert result['profile'] == [2, 2]
    assert set(result['methods']) == {'closed_form', 'recursive', 'rec_fact', 'bruteforce'}


def test_count_disagreement_is_an_acceptance_failure():
    with pytest.raises(AcceptanceError):
        parse_count(((2,), {'closed_form': 2, 'recursive': 3}))


@pytest.mark.asyncio()
async def test_moebius(calc):
    assert await calc.moebius((2,)) == '-1'
    assert await calc.moebius((2, 2), method='recursion') == '18'
    assert await calc.moebius((3,), method='geometric') == '2'
    table = await calc.moebius(up_to=2)
    assert {'diagram': [1, 1], 'value': '1/1'} in table
    with pytest.raises(PreconditionError):
        await calc.moebius()
    with pytest.raises(PreconditionError):
        await calc.moebius((2,), method='guess')


@pytest.mark.asyncio()
async def test_moebius_respects_enum_bound():
    calc = hofree.Calculator(hofree.Config(threads=1, enum_bound=3))
    with pytest.raises(BoundExceededError):
        await calc.moebius((4,))


@pytest.mark.asyncio()
async def test_convolve(calc):
    f = MultFn.random(1, 3)
    result = await calc.convolve(f, MultFn.delta(3))
    assert MultFn.from_list(result) == f


@pytest.mark.asyncio()
async def test_factorize(calc):
    result = await calc.factorize(pp_full((2,)))
    assert len(result) == 2
    assert all(set(pair) == {'first', 'second'} for pair in result)


@pytest.mark.asyncio()
async def test_series_commands(calc):
    result = await calc.c2m(semicircle(6))
    assert result['first']['coeffs']['(4)'] == '2/1'
    assert 'second' not in result
    report = await calc.series2(semicircle(6), Series2({}, 6), points=[(1, -1)])
    assert report['moments']['coeffs']['(2,2)'] == '2/1'
    assert report['cauchy_residual_zero'] is True
    assert len(report['points']) == 1


@pytest.mark.asyncio()
async def test_weingarten_commands(calc):
    assert await calc.wg(2, 3) == {'n': 2, 'N': '3/1', 'wg': {'(2)': '-1/24', '(1,1)': '1/8'}}
    assert await calc.haar_moment('|u11|^4', 5) == '1/15'
    with pytest.raises(PreconditionError):
        await calc.haar_moment('|u11|^4', 5, n=3)


@pytest.mark.asyncio()
async def test_finite_n_round_trip(calc):
    kappa = FiniteNTable(7, MultFn.random(2, 3), 'kappa')
    phi = FiniteNTable.from_dict(await calc.finite_n([kappa]))
    assert phi.kind == 'phi'
    assert FiniteNTable.from_dict(await calc.finite_n([phi])) == kappa
    with pytest.raises(PreconditionError):
        await calc.finite_n([kappa, phi])


@pytest.mark.asyncio()
async def test_unknown_command(calc):
    with pytest.raises(PreconditionError):
        await calc.execute_command('NOPE')


@pytest.mark.asyncio()
async def test_custom_response_callback_and_executor(config):
    with ThreadPoolExecutor(max_workers=1) as executor:
        calc = hofree.Calculator(config, executor=executor)
        calc.set_response_callback('HAAR MOMENT', lambda r, **_: r)
        assert await calc.haar_moment('|u11|^2', 4) == Fraction(1, 4)


def test_calculator_reads_environment(monkeypatch):
    monkeypatch.setenv('HOFC_SEED', '77')
    monkeypatch.setenv('HOFC_THREADS', '1')
    assert hofree.Calculator().config.seed == 77
    assert hofree.Calculator(trunc=5).config.trunc == 5

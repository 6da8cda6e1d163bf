from fractions import Fraction

import pytest

from hofree.exceptions import ParseError, PreconditionError, SingularSystemError
from hofree.finite_n import FiniteNTable, kappa_limit, kappaN_from_phiN, phiN_from_kappaN
from hofree.multfn import MultFn
from hofree.ps import pp_full


def kappa_table(N, seed=3, order=3):
    return FiniteNTable(N, MultFn.random(seed, order), 'kappa')


def test_round_trip():
    kappa = kappa_table(7)
    phi = phiN_from_kappaN(kappa)
    assert phi.kind == 'phi'
    assert kappaN_from_phiN(phi) == kappa


def test_first_moment_is_unnormalized_trace():
    kappa = kappa_table(5)
    assert phiN_from_kappaN(kappa)[(1,)] == 5 * kappa[(1,)]


@pytest.mark.parametrize('method', ['solve', 'gg'])
def test_inversion_methods_agree(method):
    phi = phiN_from_kappaN(kappa_table(6, seed=8))
    assert kappaN_from_phiN(phi, method) == kappaN_from_phiN(phi, 'relative')


def test_small_N_is_singular():
    phi = FiniteNTable(2, MultFn.random(1, 3), 'phi')
    with pytest.raises(SingularSystemError) as e:
        kappaN_from_phiN(phi)
    assert e.value.N == 2


def test_kind_checks():
    kappa = kappa_table(7)
    with pytest.raises(PreconditionError):
        kappaN_from_phiN(kappa)
    with pytest.raises(PreconditionError):
        kappaN_from_phiN(phiN_from_kappaN(kappa), 'newton')
    with pytest.raises(PreconditionError):
        FiniteNTable(7, MultFn(), 'moments')


def test_dict_round_trip_and_errors():
    kappa = kappa_table(Fraction(15, 2))
    assert FiniteNTable.from_dict(kappa.to_dict()) == kappa
    with pytest.raises(ParseError):
        FiniteNTable.from_dict({'N': '3', 'phi': [], 'kappa': []})


def _limit_tables(extra=0):
    tables = []
    for N in (10, 20, 40):
        N = Fraction(N)
        tables.append(FiniteNTable(N, MultFn({(2,): (3 + 5 / N ** 2 + extra / N ** 4) / N}), 'kappa'))
    return tables


def test_kappa_limit_exact():
    target = pp_full((2,))
    limit = kappa_limit(_limit_tables(), target.partition, target.perm)
    assert limit.value == 3
    assert limit.converged


def test_kappa_limit_flags_unstable_fit():
    target = pp_full((2,))
    limit = kappa_limit(_limit_tables(extra=7000), target.partition, target.perm)
    assert not limit.converged


def test_kappa_limit_preconditions():
    target = pp_full((2,))
    tables = _limit_tables()
    with pytest.raises(PreconditionError):
        kappa_limit(tables[:2], target.partition, target.perm)
    with pytest.raises(PreconditionError):
        kappa_limit(tables[::-1], target.partition, target.perm)

from fractions import Fraction

import pytest

from hofree.exceptions import BoundExceededError, PreconditionError
from hofree.iz import deterministic_distribution, iz_r, iz_series, rank2
from hofree.multfn import MultFn


def test_deterministic_distribution():
    phi = deterministic_distribution([2, '1/2', 0])
    assert phi[(1,)] == 2
    assert phi[(2,)] == Fraction(1, 2)
    assert phi[(1, 1)] == 0
    with pytest.raises(PreconditionError):
        deterministic_distribution([1], up_to=2)


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_series_against_closed_form(seed):
    ka = MultFn.random(seed, 4)
    x = [Fraction(1, 2), -1, 3, Fraction(2, 3)]
    assert iz_series(ka, deterministic_distribution(x), 4) == iz_r(ka, x, 4)


def test_first_coefficient():
    ka = MultFn.random(3, 2)
    assert iz_r(ka, [5, 1], 2)[1] == 5 * ka[(1,)]


def test_order_checks():
    with pytest.raises(BoundExceededError):
        iz_series(MultFn.random(1, 2), deterministic_distribution([1, 1, 1]), 3)
    with pytest.raises(PreconditionError):
        iz_r(MultFn.random(1, 3), [1, 2], 3)


def test_rank2_symmetry():
    first, second = rank2(MultFn.random(4, 4), 4)
    assert first[(2, 0)] == first[(0, 2)]
    assert second[(1, 2)] == second[(2, 1)]
    assert second[(3, 0)] == second[(0, 3)]

from fractions import Fraction

import pytest

from hofree.exceptions import BoundExceededError, MissingValueError, ParseError
from hofree.multfn import (MultFn, convolve, diagrams_of, diagrams_up_to, moebius_first_order_recursion,
                           moebius_geometric, moebius_recursion, moebius_second_order_recursion, moebius_table)
from hofree.ps import pp_full


def test_diagrams():
    assert list(diagrams_of(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(diagrams_up_to(5)) == 1 + 2 + 3 + 5 + 7


def test_lookup():
    f = MultFn({(2, 1): 3, (1,): '1/2'}, 'f')
    assert f[(1, 2)] == 3
    assert f[()] == 1
    assert f[(1,)] == Fraction(1, 2)
    assert f.get((3,)) is None
    with pytest.raises(MissingValueError):
        f[(3,)]  # pylint: disable=pointless-statement


def test_list_round_trip_and_parse_errors():
    f = MultFn.random(3, 4)
    assert MultFn.from_list(f.to_list()) == f
    with pytest.raises(ParseError):
        MultFn.from_list([{'diagram': [1]}])


def test_zeta_and_delta_are_disc_supported():
    assert MultFn.zeta(4).is_disc_supported()
    assert MultFn.delta(4).is_disc_supported()
    assert not MultFn({(1,): 1, (1, 1): 1}).is_disc_supported()


def test_moebius_table_values():
    mu = moebius_table(4)
    assert [mu[(n,)] for n in range(1, 5)] == [1, -1, 2, -5]
    assert mu[(1, 1)] == 1
    assert mu[(2, 1)] == -4
    assert mu[(2, 2)] == 18


def test_moebius_methods_agree():
    mu = moebius_table(5)
    for diagram in diagrams_up_to(5):
        target = pp_full(diagram)
        assert moebius_recursion(target) == mu[diagram]
        if sum(diagram) <= 4:
            assert moebius_geometric(target) == mu[diagram]


def test_moebius_scalar_recursions():
    assert moebius_first_order_recursion(5) == [1, -1, 2, -5, 14]
    second = moebius_second_order_recursion(2, 2)
    assert second[(1, 1)] == 1
    assert second[(1, 2)] == second[(2, 1)] == -4
    assert second[(2, 2)] == 18


def test_moebius_inverts_zeta():
    mu, zeta, delta = moebius_table(4), MultFn.zeta(4), MultFn.delta(4)
    assert convolve(mu, zeta, 4) == delta
    assert convolve(zeta, mu, 4) == delta


def test_delta_is_the_unit():
    f = MultFn.random(5, 4)
    assert convolve(f, MultFn.delta(4), 4) == f
    assert convolve(MultFn.delta(4), f, 4) == f


def test_disc_shortcut_agrees_with_full_sum():
    f = MultFn.random(8, 4)
    zeta = MultFn.zeta(4)
    assert convolve(f, zeta, 4) == convolve(f, zeta, 4, disc_shortcut=False)


def test_convolve_needs_tabled_orders():
    with pytest.raises(BoundExceededError):
        convolve(MultFn.zeta(3), MultFn.zeta(4), 4)

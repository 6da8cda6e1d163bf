import logging

import pytest

from hofree.bridge import check_h2_identity, second_order_tilde_bridge
from hofree.counting import (closed_form_zeta_power, count_bruteforce, count_recursive, count_two_circles, rec_fact,
                             zeta_power)
from hofree.exceptions import BoundExceededError, PreconditionError
from hofree.multfn import MultFn, diagrams_up_to
from hofree.utils import annular_count, catalan


def test_two_circle_values():
    assert count_recursive((2, 2)) == 18
    assert count_recursive((1, 2)) == 4
    assert annular_count(2, 2) == 18


@pytest.mark.parametrize('profile', diagrams_up_to(6))
def test_counting_methods_agree(profile):
    expected = closed_form_zeta_power(2, profile)
    assert count_recursive(profile) == expected
    assert rec_fact(profile) == expected
    assert count_bruteforce(profile) == expected


@pytest.mark.parametrize('m,n', [(1, 1), (1, 3), (2, 3), (3, 3), (4, 2)])
def test_two_circle_recursion(m, n):
    assert count_two_circles(m, n) == annular_count(m, n) == count_recursive((m, n))


def test_single_circle_is_catalan():
    assert [count_recursive((n,)) for n in range(1, 7)] == [catalan(n) for n in range(1, 7)]


def test_higher_zeta_powers():
    assert zeta_power(3, (3,)) == closed_form_zeta_power(3, (3,)) == 12
    assert zeta_power(2, (2, 1)) == closed_form_zeta_power(2, (2, 1))
    assert zeta_power(1, (3,)) == 1
    with pytest.raises(PreconditionError):
        zeta_power(0, (2,))


def test_zeta_power_bound():
    with pytest.raises(BoundExceededError):
        zeta_power(2, (5, 4))


def test_h2_identity():
    f, g = MultFn.random(1, 4), MultFn.random(2, 4)
    for m, n in ((1, 1), (1, 2), (2, 2), (1, 3)):
        check = check_h2_identity(f, g, m, n)
        assert check.holds, check


def test_tilde_bridge():
    f = MultFn.random(4, 3)
    bridge = second_order_tilde_bridge(f, 1, 2)
    assert bridge.first_table(3) == {(1,): f[(1,)], (2,): f[(2,)], (3,): f[(3,)]}
    with pytest.raises(BoundExceededError):
        second_order_tilde_bridge(f, 2, 2)


def test_counts_are_logged(caplog):
    with caplog.at_level(logging.DEBUG, logger='hofree.counting'):
        assert count_bruteforce((1, 2)) == 4
        assert rec_fact((2, 2)) == 18
    assert 'enumerated 4 non-crossing permutations on circles (1, 2)' in caplog.text
    assert 'rec_fact over blocks' in caplog.text

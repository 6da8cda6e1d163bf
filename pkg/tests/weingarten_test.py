from fractions import Fraction

import pytest

from hofree.exceptions import BoundExceededError, ParseError, PreconditionError, SingularSystemError
from hofree.partition import SetPartition
from hofree.permutation import Permutation
from hofree.weingarten import (WeingartenTable, gram_residual, haar_monomial_expectation, leading_exponent,
                               parse_haar_pattern, pattern_expectation, wg_from_relative_cumulants,
                               wg_order_bound, wg_partitioned, wg_relative_cumulant, wg_table, wg_table_full)


@pytest.mark.parametrize('N', [2, 3, 7, Fraction(9, 2)])
def test_order_two_values(N):
    N = Fraction(N)
    table = wg_table(2, N)
    assert table[(1, 1)] == 1 / (N ** 2 - 1)
    assert table[(2,)] == -1 / (N * (N ** 2 - 1))
    assert wg_table(1, N)[(1,)] == 1 / N


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_class_basis_matches_full_basis(n):
    assert wg_table(n, 6) == wg_table_full(n, 6)
    assert gram_residual(wg_table(n, 6)) == 0


def test_full_basis_is_bounded():
    with pytest.raises(BoundExceededError):
        wg_table_full(5, 6)


def test_singular_at_small_integer_N():
    with pytest.raises(SingularSystemError):
        wg_table(3, 2)


def test_parse_haar_pattern():
    assert parse_haar_pattern('|u11|^4') == ((1, 1), (1, 1), (1, 1), (1, 1))
    assert parse_haar_pattern('u11 u22 ~u12 ~u21') == ((1, 2), (2, 1), (1, 2), (1, 2))
    assert parse_haar_pattern('u[10,3]^2 ~u[10,3]^2').i == (10, 10)


@pytest.mark.parametrize('text', ['', 'u11 x', '|u11|^3', '|u11', 'u01'])
def test_parse_haar_pattern_rejects(text):
    with pytest.raises(ParseError):
        parse_haar_pattern(text)


@pytest.mark.parametrize('pattern,expected', [
    ('|u11|^2', lambda N: 1 / N),
    ('|u11|^4', lambda N: 2 / (N * (N + 1))),
    ('u11 u22 ~u11 ~u22', lambda N: 1 / (N ** 2 - 1)),
    ('u11 u22 ~u12 ~u21', lambda N: -1 / (N * (N ** 2 - 1))),
    ('u11 ~u12', lambda N: 0),
    ('u11 u11 ~u11', lambda N: 0),
])
def test_pattern_expectations(pattern, expected):
    for N in (Fraction(3), Fraction(5), Fraction(8)):
        assert pattern_expectation(parse_haar_pattern(pattern), N) == expected(N)


def test_fourth_moment_spot_value():
    assert pattern_expectation(parse_haar_pattern('|u11|^4'), 5) == Fraction(1, 15)


def test_haar_expectation_preconditions():
    with pytest.raises(PreconditionError):
        haar_monomial_expectation((1, 1, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1), 2)
    with pytest.raises(PreconditionError):
        haar_monomial_expectation((1,), (1,), (1, 2), (1, 1), 4)
    with pytest.raises(PreconditionError):
        haar_monomial_expectation((5,), (1,), (5,), (1,), 4)


def test_partitioned_weingarten_is_blockwise():
    sigma = Permutation.parse('(1,2)(3)')
    U = SetPartition.parse('{1,2}{3}')
    assert wg_partitioned(U, sigma, 5) == wg_table(2, 5)[(2,)] * wg_table(1, 5)[(1,)]


def test_relative_cumulants_sum_back():
    sigma = Permutation.parse('(1,2)(3)(4)')
    V = sigma.orbit_partition()
    W = SetPartition.full(4)
    assert wg_from_relative_cumulants(V, W, sigma, 9) == wg_partitioned(W, sigma, 9)
    assert wg_relative_cumulant(V, V, sigma, 9) == wg_partitioned(V, sigma, 9)
    with pytest.raises(PreconditionError):
        wg_relative_cumulant(W, V, sigma, 9)


def test_relative_cumulant_order():
    sigma = Permutation.parse('(1,2)(3)')
    V, W = sigma.orbit_partition(), SetPartition.full(3)
    bound = wg_order_bound(V, W, sigma)
    slope = leading_exponent(lambda N: wg_relative_cumulant(V, W, sigma, N), [1000, 2000, 4000])
    assert slope <= bound + 0.05


def test_table_dict_round_trip():
    table = wg_table(3, 7)
    assert WeingartenTable.from_dict(table.to_dict()) == table
    with pytest.raises(ParseError):
        WeingartenTable.from_dict({'n': 2})

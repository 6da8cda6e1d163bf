import itertools
from fractions import Fraction

import pytest

from hofree.exceptions import PreconditionError, SizeMismatchError
from hofree.hops import (FunctionOracle, add_free, alternating_powers, centered_word_covariance,
                         cumulants_from_moments, decorated_cumulant, distribution_oracle, free_covariance_prediction,
                         free_join, min_rotation, mixed_cumulant_report, moments_from_cumulants, unit_oracle)
from hofree.multfn import MultFn, diagrams_up_to
from hofree.permutation import gamma_of_profile


def oracle_of(letter, seed, order):
    return distribution_oracle(letter, moments_from_cumulants(MultFn.random(seed, order), order))


def test_min_rotation():
    assert min_rotation(('b', 'a', 'c')) == ('a', 'c', 'b')
    assert min_rotation(()) == ()


def test_unit_axioms():
    oracle = unit_oracle()
    assert oracle.moment([]) == 1
    assert oracle.moment([('1',)]) == 1
    assert oracle.moment([('1',), ('1',)]) == 0


def test_unknown_letters():
    with pytest.raises(PreconditionError):
        oracle_of('a', 1, 2).moment([('b',)])


def test_distribution_oracle_reads_table():
    moments = moments_from_cumulants(MultFn.random(2, 3), 3)
    oracle = distribution_oracle('a', moments)
    assert oracle.moment([('a', 'a')]) == moments[(2,)]
    assert oracle.moment([('a',), ('a', 'a')]) == moments[(2, 1)]
    assert oracle.phi(gamma_of_profile((2, 1)), ['a', 'a', 'a']) == moments[(2, 1)]


def test_moment_cumulant_round_trip():
    kappa = MultFn.random(4, 4)
    assert cumulants_from_moments(moments_from_cumulants(kappa)) == kappa


def test_decorated_cumulant_of_one_letter():
    kappa = MultFn.random(5, 3)
    oracle = distribution_oracle('a', moments_from_cumulants(kappa, 3))
    for diagram in diagrams_up_to(3):
        assert decorated_cumulant(oracle, gamma_of_profile(diagram), ['a'] * sum(diagram)) == kappa[diagram]


def test_mixed_cumulants_vanish_for_free_join():
    oracle = free_join(oracle_of('a', 1, 3), oracle_of('b', 2, 3))
    report = mixed_cumulant_report(oracle, [['a'], ['b']], 3)
    assert report.entries
    assert report.max_abs == 0


def test_free_join_needs_disjoint_alphabets():
    with pytest.raises(PreconditionError):
        free_join(oracle_of('a', 1, 2), oracle_of('a', 2, 2))


def test_cumulants_add_under_freeness():
    ka, kb = MultFn.random(6, 3), MultFn.random(7, 3)
    oracle = free_join(distribution_oracle('a', moments_from_cumulants(ka, 3)),
                       distribution_oracle('b', moments_from_cumulants(kb, 3)))
    expected = moments_from_cumulants(add_free(ka, kb), 3)
    for diagram in diagrams_up_to(3):
        total = Fraction(0)
        for words in itertools.product(*(itertools.product('ab', repeat=k) for k in diagram)):
            total += oracle.moment(words)
        assert total == expected[diagram], diagram


def test_centered_covariance_prediction():
    first, second = oracle_of('a', 11, 4), oracle_of('b', 12, 4)
    oracle = free_join(first, second)

    def alpha_a(k):
        return first.moment([('a',) * k])

    def alpha_b(k):
        return second.moment([('b',) * k])

    for n, m, n_tilde, m_tilde in (((1,), (1,), (1,), (1,)), ((2,), (1,), (1,), (2,))):
        exact = centered_word_covariance(oracle, alternating_powers('a', 'b', n, m),
                                         alternating_powers('a', 'b', n_tilde[::-1], m_tilde[::-1]))
        assert exact == free_covariance_prediction(alpha_a, alpha_b, n, m, n_tilde, m_tilde)


def test_prediction_vanishes_for_different_lengths():
    assert free_covariance_prediction(lambda k: 1, lambda k: 1, (1,), (1,), (1, 1), (1, 1)) == 0


def test_alternating_powers():
    assert alternating_powers('a', 'b', (1, 2), (3, 4)) == [('a', 1), ('b', 3), ('a', 2), ('b', 4)]
    with pytest.raises(SizeMismatchError):
        alternating_powers('a', 'b', (1,), (1, 2))


def test_function_oracle_caches_canonical_keys():
    seen = []

    def moment(traces):
        seen.append(traces)
        return Fraction(len(traces))

    oracle = FunctionOracle(['x', 'y'], moment)
    assert oracle.moment([('y', 'x')]) == oracle.moment([('x', 'y')]) == 1
    assert seen == [(('x', 'y'),)]

# pylint: disable=redefined-outer-name
import random

import pytest

import hofree
from hofree.acceptance import (CRITERIA, CriterionResult, _cumulant_point, _multfn_of,
                               _second_order_cumulant_polynomials, _second_order_polynomials, _series_of,
                               criteria_for, run_criterion, run_suite)
from hofree.exceptions import PreconditionError
from hofree.transforms import c2m_first, c2m_second


def test_criteria_for():
    exact = criteria_for('exact')
    montecarlo = criteria_for('montecarlo')
    assert {c.suite for c in exact} == {'exact'}
    assert {c.suite for c in montecarlo} == {'montecarlo'}
    assert len(exact) + len(montecarlo) == len(criteria_for('all')) == len(CRITERIA)
    assert sorted({c.number for c in CRITERIA}) == list(range(1, 13))
    with pytest.raises(PreconditionError):
        criteria_for('fast')


def test_second_order_polynomial_tables():
    k = dict.fromkeys(['k1', 'k2', 'k3', 'k4', 'k5', 'k6', 'k11', 'k12', 'k13', 'k22', 'k23', 'k33'], 0)
    k.update(k1=1, k2=1)
    alpha = _second_order_polynomials(**k)
    assert alpha == {(1, 1): 1, (2, 1): 2, (2, 2): 6, (1, 3): 6, (2, 3): 18, (3, 3): 57}
    kappa = _second_order_cumulant_polynomials(1, 2, 4, 9, 21, 51, alpha[(1, 1)], alpha[(2, 1)], alpha[(1, 3)],
                                               alpha[(2, 2)], alpha[(2, 3)], alpha[(3, 3)])
    assert set(kappa.values()) == {0}


@pytest.mark.parametrize('seed', range(3))
def test_second_order_polynomials_invert_each_other(seed):
    k = _cumulant_point(random.Random(seed))
    C, C2 = _series_of(_multfn_of(k), 6)
    M = c2m_first(C)
    alpha = _second_order_polynomials(**k)
    kappa = _second_order_cumulant_polynomials(*[M[n] for n in range(1, 7)], alpha[(1, 1)], alpha[(2, 1)],
                                               alpha[(1, 3)], alpha[(2, 2)], alpha[(2, 3)], alpha[(3, 3)])
    assert kappa == {key: C2[key] for key in kappa}
    assert alpha == {key: c2m_second(C, C2)[key] for key in alpha}


@pytest.mark.parametrize('criterion', criteria_for('exact'), ids=lambda c: c.name)
def test_exact_criterion(criterion, config):
    result = run_criterion(criterion, config, quick=True)
    assert result.passed, result.detail
    assert result.number == criterion.number


def test_run_suite_with_custom_run(config):
    seen = []

    def run(criterion):
        seen.append(criterion.name)
        return CriterionResult(criterion.number, criterion.name, criterion.number != 3, 'stub')

    results = run_suite('exact', config, quick=True, run=run)
    assert seen == [c.name for c in criteria_for('exact')]
    assert [r.passed for r in results] == [r.number != 3 for r in results]


def test_failed_check_is_reported(config):
    criterion = CRITERIA[0]._replace(check=lambda config, quick: (False, 'forced'))
    result = run_criterion(criterion, config)
    assert not result.passed
    assert result.detail == 'forced'


@pytest.mark.montecarlo
def test_haar_criterion_sampled():
    criterion = next(c for c in criteria_for('montecarlo') if c.name == 'Haar Monte Carlo')
    result = run_criterion(criterion, hofree.Config(threads=2, seed=7, tolerance=5.0), quick=True)
    assert result.passed, result.detail


@pytest.mark.slow
@pytest.mark.parametrize('criterion', [c for c in criteria_for('exact') if c.number != 11], ids=lambda c: c.name)
def test_exact_criterion_full_size(criterion, config):
    result = run_criterion(criterion, config, quick=False)
    assert result.passed, result.detail

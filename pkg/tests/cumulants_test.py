from fractions import Fraction

from hofree.cumulants import ClassicalCumulants, classical_moments
from hofree.partition import SetPartition


def gaussian_moment(labels):
    # standard normal: E[X^k] = (k-1)!! for even k
    k = len(labels)
    if k % 2:
        return Fraction(0)
    value = 1
    for j in range(k - 1, 0, -2):
        value *= j
    return Fraction(value)


def test_gaussian_cumulants():
    cumulants = ClassicalCumulants(gaussian_moment)
    assert cumulants.cumulant(['x', 'x']) == 1
    assert cumulants.cumulant(['x'] * 4) == 0
    assert cumulants.cumulant(['x'] * 3) == 0


def test_poisson_cumulants_are_constant():
    # Touchard polynomials at rate 2
    moments = {1: 2, 2: 6, 3: 22, 4: 94}
    cumulants = ClassicalCumulants(lambda labels: Fraction(moments[len(labels)]))
    assert [cumulants.cumulant(['x'] * k) for k in range(1, 5)] == [2, 2, 2, 2]


def test_moments_from_cumulants():
    assert classical_moments(lambda block: 2, ['x'] * 4) == 94


def test_leonov_shiryaev_matches_product_cumulant():
    moments = {1: 2, 2: 6, 3: 22, 4: 94}
    cumulants = ClassicalCumulants(lambda labels: Fraction(moments[len(labels)]))
    U = SetPartition.parse('{1,2}{3}{4}')
    labels = ['x'] * 4
    assert cumulants.leonov_shiryaev(labels, U) == cumulants.product_cumulant(labels, U)


def test_moment_cache_is_order_free():
    calls = []

    def moment(labels):
        calls.append(labels)
        return Fraction(1)

    cumulants = ClassicalCumulants(moment)
    cumulants.moment(['b', 'a'])
    cumulants.moment(['a', 'b'])
    assert calls == [('a', 'b')]

from fractions import Fraction

import pytest

from hofree.exceptions import ParseError, PreconditionError
from hofree.multfn import MultFn, convolve
from hofree.series import Series1, Series2
from hofree.transforms import (c2m_first, c2m_second, cauchy_forms, free_poisson, m2c_first, m2c_second,
                               r_transform2, second_order_pairings, second_order_permutations, semicircle, tilde_c,
                               tilde_c_closed_form)


def low_coefficients(series: Series2, top: int):
    return {(i, j): series[(i, j)] for i in range(top + 1) for j in range(top + 1 - i)}


def random_cumulants(seed: int, trunc: int):
    f = MultFn.random(seed, trunc)
    C = Series1([1] + [f[(k,)] for k in range(1, trunc + 1)], trunc)
    C2 = Series2({(m, n): f.get((m, n), 0) for m in range(1, trunc) for n in range(1, trunc + 1 - m)}, trunc)
    return f, C, C2


def test_series1_arithmetic():
    geometric = (1 - Series1.x(6)).reciprocal()
    assert geometric.coeffs == tuple(Fraction(1) for _ in range(7))
    assert (geometric * (1 - Series1.x(6))) == Series1.constant(1, 6)
    assert geometric.log().coeffs[1:4] == (1, Fraction(1, 2), Fraction(1, 3))
    assert Series1([1, 2, 3]).evaluate(2) == 17


def test_series2_division_by_x_minus_y():
    f = Series2({(2, 0): 1, (0, 2): -1}, 4)
    assert f.divide_by_x_minus_y() == Series2({(1, 0): 1, (0, 1): 1}, 3)
    with pytest.raises(PreconditionError):
        Series2({(1, 0): 1}, 3).divide_by_x_minus_y()


def test_semicircle_moments_are_catalan():
    M = c2m_first(semicircle(8))
    assert list(M.coeffs) == [1, 0, 1, 0, 2, 0, 5, 0, 14]


def test_free_poisson_moments():
    assert list(c2m_first(free_poisson(1, 5)).coeffs) == [1, 1, 2, 5, 14, 42]
    assert c2m_first(free_poisson(2, 3))[2] == 2 + 4


def test_first_order_round_trip():
    _, C, _ = random_cumulants(2, 7)
    K = m2c_first(c2m_first(C))
    assert [K[k] for k in range(8)] == [C[k] for k in range(8)]


def test_semicircle_second_order_moments():
    M2 = c2m_second(semicircle(8), Series2({}, 8))
    assert (M2[(1, 1)], M2[(2, 2)], M2[(1, 3)], M2[(1, 2)]) == (1, 2, 3, 0)
    top = 6
    assert low_coefficients(M2, top) == low_coefficients(second_order_pairings(c2m_first(semicircle(8))), top)


def test_second_order_round_trip():
    _, C, C2 = random_cumulants(4, 6)
    M2 = c2m_second(C, C2)
    recovered = m2c_second(c2m_first(C), M2)
    assert low_coefficients(recovered, 5) == low_coefficients(C2, 5)


def test_series_match_convolution():
    f, C, C2 = random_cumulants(6, 5)
    moments = convolve(f, MultFn.zeta(5), 5)
    M, M2 = c2m_first(C), c2m_second(C, C2)
    assert [M[k] for k in range(1, 6)] == [moments[(k,)] for k in range(1, 6)]
    assert all(M2[(m, n)] == moments[(m, n)] for m in range(1, 5) for n in range(1, 6 - m))


def test_tilde_c_forms_agree():
    _, C, _ = random_cumulants(9, 6)
    assert low_coefficients(tilde_c(C), 5) == low_coefficients(tilde_c_closed_form(C), 5)


def test_tilde_c_of_geometric_cumulants():
    geometric = Series1([1] * 8, 7)
    assert low_coefficients(tilde_c(geometric), 6) == low_coefficients(second_order_permutations(7), 6)


def test_preconditions():
    with pytest.raises(PreconditionError):
        c2m_first(Series1([2, 1], 4))
    with pytest.raises(PreconditionError):
        c2m_second(semicircle(4), Series2({(0, 1): 1}, 4))
    with pytest.raises(PreconditionError):
        c2m_second(semicircle(1), Series2({}, 1))


def test_r_transform2_divides_by_xy():
    C2 = Series2({(1, 1): 2, (2, 1): 3}, 5)
    assert r_transform2(C2) == Series2({(0, 0): 2, (1, 0): 3}, 3)


@pytest.mark.parametrize('C', [semicircle(8), free_poisson(2, 8)])
def test_cauchy_forms(C):
    M = c2m_first(C)
    report = cauchy_forms(M, c2m_second(C, Series2({}, 8)), [(Fraction(1, 10), Fraction(1, 20))])
    assert report.residual_series_is_zero
    assert len(report.points) == 1
    with pytest.raises(PreconditionError):
        cauchy_forms(M, c2m_second(C, Series2({}, 8)), [(Fraction(1, 10), Fraction(1, 10))])


def test_dict_round_trip_and_errors():
    s = Series2({(1, 2): Fraction(-3, 4), (2, 1): 5}, 6)
    assert Series2.from_dict(s.to_dict()) == s
    assert Series1.from_dict(semicircle(4).to_dict()) == semicircle(4)
    with pytest.raises(ParseError):
        Series1.from_dict({'trunc': 3, 'coeffs': {'(1,1)': '1/1'}})
    with pytest.raises(ParseError):
        Series2.from_dict({'trunc': 3, 'coeffs': {'x': '1'}})

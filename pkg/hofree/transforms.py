"""
First- and second-order moment/cumulant transforms on truncated series.

First order: C(x M(x)) = M(x). Second order goes through
H = C2 + C~ where C~ depends on the first-order cumulants only, and

    M2(x, y) = H(x M(x), y M(y)) F(x) F(y),   F = (x M)' / M,

which keeps every intermediate a genuine power series.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from typing import Iterable, List, Tuple

from hofree.exceptions import PreconditionError
from hofree.series import Series1, Series2

logger = logging.getLogger(__name__)

CauchyPoint = namedtuple('CauchyPoint', 'z w lhs rhs residual')
CauchyFormReport = namedtuple('CauchyFormReport', 'residual_series_is_zero residual points')


def _require_unit(series: Series1, name: str):
    if series[0] != 1:
        raise PreconditionError(f'{name} must have constant term 1, got {series[0]}')


def _require_second_order(series: Series2, name: str):
    for (i, j), c in series.coeffs.items():
        if i == 0 or j == 0:
            raise PreconditionError(f'{name} has a nonzero coefficient at ({i}, {j}); sums start at (1, 1)')


def _require_trunc(trunc: int):
    if trunc < 2:
        raise PreconditionError(f'second-order transforms need truncation >= 2, got {trunc}')


def c2m_first(C: Series1) -> Series1:
    _require_unit(C, 'C')
    M = Series1.constant(1, C.trunc)
    for _ in range(C.trunc + 1):
        M = C.compose(M.shift(1))
    return M


def inverse_of_x_times(M: Series1) -> Series1:
    """The series X(u) with X(u) M(X(u)) = u."""
    _require_unit(M, 'M')
    X = Series1.x(M.trunc + 1)
    for _ in range(M.trunc + 1):
        X = M.compose(X).reciprocal().shift(1)
    return X


def m2c_first(M: Series1) -> Series1:
    return M.compose(inverse_of_x_times(M))


def _cumulant_quotient(C: Series1, trunc: int) -> Series2:
    """(x C(y) - y C(x)) / (x - y) = 1 - sum_{i,j>=1} kappa_{i+j} x^i y^j"""
    C = C.truncate(trunc)
    numerator = Series2.in_y(C).shift(1, 0) - Series2.in_x(C).shift(0, 1)
    return numerator.divide_by_x_minus_y()


def tilde_c(C: Series1, trunc: int = None) -> Series2:
    """C~(x, y) = -xy d/dx d/dy log((x C(y) - y C(x)) / (x - y))"""
    _require_unit(C, 'C')
    trunc = C.trunc if trunc is None else min(trunc, C.trunc)
    _require_trunc(trunc)
    return -_cumulant_quotient(C, trunc).log().dx().dy().shift(1, 1)


def tilde_c_closed_form(C: Series1, trunc: int = None) -> Series2:
    """
    xy (C^_xy / (1 - C^) + C^_x C^_y / (1 - C^)^2) with
    C^(x, y) = sum_{i,j>=1} kappa_{i+j} x^i y^j.
    """
    _require_unit(C, 'C')
    trunc = C.trunc if trunc is None else min(trunc, C.trunc)
    _require_trunc(trunc)
    hat = Series2({(i, k - i): C[k] for k in range(2, trunc + 1) for i in range(1, k)}, trunc)
    rest = (1 - hat).reciprocal()
    return (hat.dx().dy() * rest + hat.dx() * hat.dy() * rest * rest).shift(1, 1)


def _f_series(M: Series1) -> Series1:
    """(x M)' / M"""
    return M.shift(1).derivative() / M


def c2m_second(C: Series1, C2: Series2) -> Series2:
    _require_unit(C, 'C')
    _require_second_order(C2, 'C2')
    trunc = min(C.trunc, C2.trunc)
    _require_trunc(trunc)
    C = C.truncate(trunc)
    M = c2m_first(C)
    H = C2.truncate(trunc) + tilde_c(C)
    xm = M.shift(1)
    F = _f_series(M)
    return H.substitute(xm, xm) * Series2.outer(F, F)


def m2c_second(M: Series1, M2: Series2) -> Series2:
    _require_unit(M, 'M')
    _require_second_order(M2, 'M2')
    trunc = min(M.trunc, M2.trunc)
    _require_trunc(trunc)
    M = M.truncate(trunc)
    X = inverse_of_x_times(M)
    FX = _f_series(M).compose(X)
    H = M2.truncate(trunc).substitute(X, X) / Series2.outer(FX, FX)
    return H - tilde_c(m2c_first(M))


def free_poisson(c, trunc: int) -> Series1:
    """kappa_n = c for all n >= 1"""
    c = Fraction(c)
    return Series1([1] + [c] * trunc, trunc)


def semicircle(trunc: int) -> Series1:
    return Series1([1, 0, 1], trunc)


def r_transform2(C2: Series2) -> Series2:
    """R(x, y) = C2(x, y) / (xy)"""
    return C2.divide_by_monomial(1, 1)


def second_order_pairings(M: Series1) -> Series2:
    """xy (xM)'(yM)' / (1 - xy M(x) M(y))^2, the second-order moments of a semicircle."""
    d = M.shift(1).derivative()
    denominator = 1 - Series2.outer(M, M).shift(1, 1)
    rest = denominator.reciprocal()
    return (Series2.outer(d, d).shift(1, 1) * rest * rest).truncate(M.trunc)


def second_order_permutations(trunc: int) -> Series2:
    """xy / (1 - x - y)^2, the value of C~ for C = 1 / (1 - x)."""
    base = Series2({(0, 0): 1, (1, 0): -1, (0, 1): -1}, trunc).reciprocal()
    return (base * base).shift(1, 1).truncate(trunc)


def cauchy_forms(M: Series1, M2: Series2, samples: Iterable[Tuple] = ()) -> CauchyFormReport:
    """
    Check the second-order Cauchy transform identity

        G(x, y) = G'(x) G'(y) (R(G(x), G(y)) + 1 / (G(x) - G(y))^2) - 1 / (x - y)^2

    in the local variables z = 1/x, w = 1/y, where G = u(z) = z M(z) and
    G(x, y) = zw M2(z, w). The identity is checked as a series, then at each
    sample point (z, w) by evaluating the truncated series.
    """
    _require_unit(M, 'M')
    trunc = min(M.trunc, M2.trunc)
    _require_trunc(trunc)
    M, M2 = M.truncate(trunc), M2.truncate(trunc)
    C2 = m2c_second(M, M2)
    u = M.shift(1)
    du = u.derivative()
    F = _f_series(M)

    quotient = (Series2.in_x(u) - Series2.in_y(u)).divide_by_x_minus_y()
    singular = (Series2.outer(du, du) - quotient * quotient).divide_by_x_minus_y().divide_by_x_minus_y()
    bracket = (singular / (quotient * quotient)).shift(1, 1)
    residual = M2 - (C2.substitute(u, u) * Series2.outer(F, F) + bracket).truncate(trunc)

    points: List[CauchyPoint] = []
    for z, w in samples:
        z, w = Fraction(z), Fraction(w)
        if z == w:
            raise PreconditionError(f'coincident sample points z = w = {z}')
        if z == 0 or w == 0:
            raise PreconditionError('sample points must be nonzero')
        uz, uw = u.evaluate(z), u.evaluate(w)
        if uz == uw or uz == 0 or uw == 0:
            raise PreconditionError(f'G takes degenerate values at ({z}, {w})')
        lhs = z * w * M2.evaluate(z, w)
        r = C2.evaluate(uz, uw) / (uz * uw)
        scale = z * z * w * w
        rhs = scale * du.evaluate(z) * du.evaluate(w) * (r + 1 / (uz - uw) ** 2) - scale / (z - w) ** 2
        points.append(CauchyPoint(z, w, lhs, rhs, lhs - rhs))
    logger.debug('cauchy form residual has %d nonzero coefficients', len(residual.coeffs))
    return CauchyFormReport(residual.is_zero(), residual, points)

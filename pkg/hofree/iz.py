"""
Itzykson-Zuber integrals as formal power series.

The limit of N^-2 log E exp(z N Tr(A U B U*)) has z^n/n! coefficient
sum kappa^a(V, pi) phi^b(W, sigma) over (V, pi) * (W, sigma) = (1_n, e).
"""
import logging
from fractions import Fraction
from math import factorial
from typing import Sequence, Tuple

from hofree.exceptions import BoundExceededError, PreconditionError
from hofree.multfn import MultFn, diagrams_of, diagrams_up_to
from hofree.partition import SetPartition
from hofree.permutation import Permutation
from hofree.ps import DEFAULT_ENUM_BOUND, PartitionedPermutation, check_bound, factorizations2
from hofree.series import Series1, Series2
from hofree.utils import multinomial_class_size, to_fraction

logger = logging.getLogger(__name__)


def _check_order(table: MultFn, up_to: int):
    if up_to > table.order_bound:
        raise BoundExceededError(f'{table!r} is tabled up to {table.order_bound}, need {up_to}')


def deterministic_distribution(x: Sequence, up_to: int = None) -> MultFn:
    """phi((k)) = x_k; every diagram with two or more parts vanishes."""
    x = [to_fraction(v) for v in x]
    up_to = len(x) if up_to is None else up_to
    if up_to > len(x):
        raise PreconditionError(f'{len(x)} moments given, need {up_to}')
    return MultFn({d: x[d[0] - 1] if len(d) == 1 else 0 for d in diagrams_up_to(up_to)}, 'deterministic')


def iz_series(ka: MultFn, phib: MultFn, up_to: int, bound: int = DEFAULT_ENUM_BOUND) -> Series1:
    _check_order(ka, up_to)
    _check_order(phib, up_to)
    check_bound(up_to, bound)
    coeffs = [Fraction(0)]
    for n in range(1, up_to + 1):
        target = PartitionedPermutation(SetPartition.full(n), Permutation.identity(n))
        total = Fraction(0)
        for a, b in factorizations2(target, bound):
            total += ka.evaluate(a) * phib.evaluate(b)
        coeffs.append(total / factorial(n))
    logger.debug('IZ series of %r against %r up to z^%d', ka, phib, up_to)
    return Series1(coeffs, up_to)


def iz_r(ka: MultFn, x: Sequence, up_to: int) -> Series1:
    """
    sum over diagrams lambda of x^lambda c_lambda kappa^a(1_n, lambda) / n!,
    graded by n = |lambda|; c_lambda is the size of the conjugacy class.
    """
    _check_order(ka, up_to)
    x = [to_fraction(v) for v in x]
    if len(x) < up_to:
        raise PreconditionError(f'{len(x)} moments given, need {up_to}')
    coeffs = [Fraction(0)]
    for n in range(1, up_to + 1):
        total = Fraction(0)
        for diagram in diagrams_of(n):
            power = Fraction(1)
            for part in diagram:
                power *= x[part - 1]
            total += power * multinomial_class_size(diagram) * ka[diagram]
        coeffs.append(total / factorial(n))
    return Series1(coeffs, up_to)


def rank2(ka: MultFn, up_to: int) -> Tuple[Series2, Series2]:
    """
    The leading and 1/N terms for a rank-two matrix with eigenvalues x, y:
    sum kappa_n / n (x^n + y^n) and sum kappa_{m,n} / (mn) (x^m + y^m)(x^n + y^n).
    """
    _check_order(ka, up_to)
    first = {}
    for n in range(1, up_to + 1):
        value = Fraction(ka[(n,)]) / n
        first[(n, 0)] = first.get((n, 0), 0) + value
        first[(0, n)] = first.get((0, n), 0) + value
    second = {}
    for m in range(1, up_to):
        for n in range(1, up_to - m + 1):
            value = Fraction(ka[(m, n)]) / (m * n)
            for key in ((m + n, 0), (m, n), (n, m), (0, m + n)):
                second[key] = second.get(key, 0) + value
    return Series2(first, up_to), Series2(second, up_to)

"""
Counting geodesic factorizations: ζ^{*p} by enumeration, by the product
closed form and by three recursions. For p = 2 all of them count the
connected non-crossing permutations of a circle profile.
"""
import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from hofree.exceptions import PreconditionError
from hofree.permutation import Permutation, check_profile, enumerate_snc, gamma_of_profile
from hofree.ps import DEFAULT_ENUM_BOUND, PartitionedPermutation, check_bound, disc_second_factorizations, pp_full
from hofree.typing import Diagram, Profile
from hofree.utils import annular_count, catalan

logger = logging.getLogger(__name__)

__all__ = ['catalan', 'annular_count', 'zeta_power', 'closed_form_zeta_power', 'count_bruteforce',
           'count_recursive', 'count_two_circles', 'rec_fact']


@lru_cache(maxsize=None)
def _zeta_power(target: PartitionedPermutation, p: int) -> int:
    if p == 1:
        return int(target.is_disc())
    return sum(_zeta_power(rest, p - 1)
               for rest, _ in disc_second_factorizations(target, target.n, True))


def zeta_power(p: int, target, bound: int = DEFAULT_ENUM_BOUND, allow_large: bool = False) -> int:
    """Ordered p-tuples of disc permutations whose geodesic product is target."""
    if p < 1:
        raise PreconditionError(f'zeta power needs p >= 1, got {p}')
    if not isinstance(target, PartitionedPermutation):
        target = pp_full(target)
    check_bound(target.n, bound, allow_large)
    return _zeta_power(target, p)


def closed_form_zeta_power(p: int, profile: Sequence[int]) -> int:
    """p ((p-1)n-1)! / ((p-1)n-r+2)! * prod n_i binom(p n_i - 1, n_i)"""
    profile = check_profile(profile)
    if p < 1:
        raise PreconditionError(f'zeta power needs p >= 1, got {p}')
    n, r = sum(profile), len(profile)
    if p == 1:
        return int(r == 1)
    value = Fraction(p * factorial((p - 1) * n - 1), factorial((p - 1) * n - r + 2))
    for size in profile:
        value *= size * comb(p * size - 1, size)
    if value.denominator != 1:
        raise ArithmeticError(f'closed form is not integral at {profile}')
    return int(value)


def count_bruteforce(profile: Sequence[int]) -> int:
    count = len(enumerate_snc(profile))
    logger.debug('enumerated %d non-crossing permutations on circles %s', count, tuple(profile))
    return count


@lru_cache(maxsize=None)
def _count(profile: Profile) -> int:
    n1, others = profile[0], profile[1:]
    if not others:
        return catalan(n1)
    if n1 == 0 or any(k == 0 for k in others):
        return 0
    total = 0
    for l, size in enumerate(others):
        rest = others[:l] + others[l + 1:]
        total += size * _count((n1 + size - 1,) + rest)
    indices = range(len(others))
    for k in range(1, n1 + 1):
        for mask in itertools.product((0, 1), repeat=len(others)):
            left = tuple(others[i] for i in indices if mask[i])
            right = tuple(others[i] for i in indices if not mask[i])
            total += _count((k - 1,) + left) * _count((n1 - k,) + right)
    return total


def count_recursive(profile: Sequence[int]) -> int:
    """c_{n1..nr} by removing the point 1 from the first circle."""
    profile = check_profile(profile)
    logger.debug('recursive count on circles %s', profile)
    return _count(profile)


def count_two_circles(m: int, n: int) -> int:
    """c_{m,n} = sum_k (c_{k-1} c_{m,n-k} + c_{m,k-1} c_{n-k}) + m c_{m+n-1}"""
    if m < 1 or n < 0:
        raise PreconditionError(f'two-circle count needs m >= 1, n >= 0, got ({m}, {n})')
    table = {0: 0}
    for b in range(1, n + 1):
        table[b] = m * catalan(m + b - 1) + sum(
            catalan(k - 1) * table[b - k] + table[k - 1] * catalan(b - k) for k in range(1, b + 1))
    return table[n]


@lru_cache(maxsize=None)
def _rec_fact(diagram: Diagram) -> int:
    n = sum(diagram)
    if n == 0:
        return 1
    gamma = gamma_of_profile(diagram)
    if gamma.is_identity():
        return factorial(n - 1)
    p = next(i for i in range(1, n + 1) if gamma(i) != i)
    gamma_inv = gamma.inverse()
    orbit = next(c for c in gamma.cycles() if p in c)
    rest_points = [i for i in range(1, n + 1) if i != p]
    total = 0
    for k in range(1, n + 1):
        swap_out = Permutation.from_cycles([(p, k)] if k != p else [], n)
        swap_in = Permutation.from_cycles([(p, gamma_inv(k))] if gamma_inv(k) != p else [], n)
        reduced = (swap_out * gamma * swap_in).restrict(rest_points)
        if k == p or k == gamma(p) or k not in orbit:
            total += _rec_fact(reduced.cycle_type())
            continue
        position = {x: j + 1 for j, x in enumerate(rest_points)}
        cycles = reduced.cycles()
        first = next(c for c in cycles if position[gamma_inv(k)] in c)
        second = next(c for c in cycles if position[k] in c)
        others = [c for c in cycles if c not in (first, second)]
        for mask in itertools.product((0, 1), repeat=len(others)):
            left = [first] + [c for c, bit in zip(others, mask) if bit]
            right = [second] + [c for c, bit in zip(others, mask) if not bit]
            total += (_rec_fact(tuple(sorted(map(len, left), reverse=True)))
                      * _rec_fact(tuple(sorted(map(len, right), reverse=True))))
    return total


def rec_fact(target) -> int:
    """
    ζ*ζ(U, γ) by the recursion that removes one point and splits U.

    Multiplicative over the blocks of U; accepts a circle profile as
    shorthand for (1_n, γ_profile).
    """
    if not isinstance(target, PartitionedPermutation):
        target = pp_full(check_profile(target))
    diagrams = target.block_diagrams()
    logger.debug('rec_fact over blocks %s', diagrams)
    value = 1
    for diagram in diagrams:
        value *= _rec_fact(diagram)
    return value

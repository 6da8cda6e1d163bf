"""
Exact Weingarten calculus for the unitary group at a rational parameter N.

Wg(N, .) is the class function inverting the Gram matrix
(N^{#(sigma tau^-1)}) over S_n. Tables are solved in the conjugacy-class
basis; the full S_n basis is kept as an oracle for small n.
"""
import itertools
import logging
import re
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Mapping, Sequence

import numpy as np
from sympy import Matrix, Rational

from hofree.exceptions import (BoundExceededError, ParseError, PreconditionError, SingularSystemError,
                               SizeMismatchError)
from hofree.multfn import diagrams_of, normalize_diagram
from hofree.partition import SetPartition, moebius_partition, partitions_between
from hofree.permutation import Permutation, all_permutations, gamma_of_profile
from hofree.ps import enumerate_ps
from hofree.typing import Diagram
from hofree.utils import fraction_str, to_fraction

logger = logging.getLogger(__name__)

HaarPattern = namedtuple('HaarPattern', 'i_prime j_prime i j')

_FACTOR_RE = re.compile(
    r'(?P<abs>\|)?(?P<conj>~)?u(?:(?P<a>\d)(?P<b>\d)|\[(?P<c>\d+),(?P<d>\d+)\])(?P<close>\|)?(?:\^(?P<power>\d+))?')


def _to_sympy(value) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def solve_rational(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], N=None) -> List[Fraction]:
    """Exact solution of a square system; SingularSystemError when there is none."""
    matrix = Matrix([[_to_sympy(x) for x in row] for row in rows])
    vector = Matrix([_to_sympy(x) for x in rhs])
    try:
        solution = matrix.LUsolve(vector)
    except (ValueError, ZeroDivisionError) as e:
        raise SingularSystemError(f'singular {matrix.rows}x{matrix.cols} system at N={N}', N) from e
    if any(not x.is_Rational for x in solution) or matrix * solution != vector:
        raise SingularSystemError(f'singular {matrix.rows}x{matrix.cols} system at N={N}', N)
    logger.debug('solved %dx%d exact system at N=%s', matrix.rows, matrix.cols, N)
    return [_from_sympy(x) for x in solution]


class WeingartenTable:
    """Wg(N, .) on S_n keyed by cycle type."""

    def __init__(self, n: int, N, values: Mapping[Diagram, Fraction]):
        self.n = n
        self.N = to_fraction(N)
        self.values = {normalize_diagram(k): Fraction(v) for k, v in values.items()}

    def __getitem__(self, diagram) -> Fraction:
        return self.values[normalize_diagram(diagram)]

    def __call__(self, perm: Permutation) -> Fraction:
        if perm.n != self.n:
            raise SizeMismatchError(f'Weingarten table of order {self.n} at a permutation of {perm.n}')
        return self.values[perm.cycle_type()]

    def __eq__(self, other):
        return (isinstance(other, WeingartenTable) and self.n == other.n and self.N == other.N
                and self.values == other.values)

    def to_dict(self) -> dict:
        return {'n': self.n, 'N': fraction_str(self.N),
                'wg': {'(' + ','.join(map(str, d)) + ')': fraction_str(v)
                       for d, v in sorted(self.values.items(), reverse=True)}}

    @classmethod
    def from_dict(cls, data: Mapping) -> 'WeingartenTable':
        try:
            values = {tuple(int(x) for x in key.strip('()').split(',')): to_fraction(value)
                      for key, value in data['wg'].items()}
            return cls(int(data['n']), to_fraction(data['N']), values)
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f'malformed Weingarten table: {e}') from e

    def __repr__(self):
        return f'{type(self).__name__}<n={self.n}, N={self.N}>'


@lru_cache(maxsize=None)
def _class_gram(n: int, N: Fraction):
    reps = list(diagrams_of(n))
    index = {d: k for k, d in enumerate(reps)}
    rows = [[Fraction(0)] * len(reps) for _ in reps]
    perms = {d: gamma_of_profile(d) for d in reps}
    for tau in all_permutations(n):
        column = index[tau.cycle_type()]
        tau_inv = tau.inverse()
        for d, pi in perms.items():
            rows[index[d]][column] += N ** (pi * tau_inv).cycle_count()
    return reps, rows


@lru_cache(maxsize=None)
def wg_table(n: int, N) -> WeingartenTable:
    N = to_fraction(N)
    if n == 0:
        return WeingartenTable(0, N, {})
    reps, rows = _class_gram(n, N)
    identity = (1,) * n
    solution = solve_rational(rows, [Fraction(int(d == identity)) for d in reps], N)
    return WeingartenTable(n, N, dict(zip(reps, solution)))


def wg_table_full(n: int, N, bound: int = 4) -> WeingartenTable:
    """Weingarten values from the n! x n! Gram system."""
    if n > bound:
        raise BoundExceededError(f'full Gram inversion limited to n <= {bound}, got {n}')
    N = to_fraction(N)
    perms = list(all_permutations(n))
    rows = [[N ** (sigma * tau.inverse()).cycle_count() for tau in perms] for sigma in perms]
    solution = solve_rational(rows, [Fraction(int(sigma.is_identity())) for sigma in perms], N)
    values = {}
    for tau, value in zip(perms, solution):
        values.setdefault(tau.cycle_type(), value)
    return WeingartenTable(n, N, values)


def gram_residual(table: WeingartenTable) -> Fraction:
    """max over sigma of |sum_tau N^{#(sigma tau^-1)} Wg(tau) - delta(sigma, e)|"""
    perms = list(all_permutations(table.n))
    worst = Fraction(0)
    for sigma in perms:
        total = sum((table.N ** (sigma * tau.inverse()).cycle_count() * table(tau) for tau in perms), Fraction(0))
        worst = max(worst, abs(total - int(sigma.is_identity())))
    return worst


def wg_value(perm: Permutation, N) -> Fraction:
    if perm.n == 0:
        return Fraction(1)
    return wg_table(perm.n, to_fraction(N))(perm)


def wg_partitioned(U: SetPartition, sigma: Permutation, N) -> Fraction:
    """Wg(U, sigma): the product over blocks of U."""
    value = Fraction(1)
    for block in U.blocks:
        value *= wg_value(sigma.restrict(block), N)
    return value


def haar_monomial_expectation(i_prime: Sequence[int], j_prime: Sequence[int], i: Sequence[int],
                              j: Sequence[int], N) -> Fraction:
    """E[u_{i1 j1} ... u_{in jn} conj(u_{i'1 j'1}) ... conj(u_{i'n j'n})]"""
    n = len(i)
    if not len(j) == len(i_prime) == len(j_prime) == n:
        raise PreconditionError(
            f'index tuples of unequal length: {len(i_prime)}, {len(j_prime)}, {n}, {len(j)}')
    N = to_fraction(N)
    if N < n:
        raise PreconditionError(f'Haar expectations need N >= n, got N={N}, n={n}')
    if n == 0:
        return Fraction(1)
    if max(itertools.chain(i, j, i_prime, j_prime)) > N:
        raise PreconditionError(f'matrix index exceeds N={N}')
    matches = [
        [alpha for alpha in itertools.permutations(range(n))
         if all(row[k] == prime[alpha[k]] for k in range(n))]
        for row, prime in ((i, i_prime), (j, j_prime))
    ]
    table = wg_table(n, N)
    total = Fraction(0)
    for alpha in matches[0]:
        alpha_inv = Permutation(alpha, zero_based=True).inverse()
        for beta in matches[1]:
            total += table(Permutation(beta, zero_based=True) * alpha_inv)
    return total


def parse_haar_pattern(pattern: str) -> HaarPattern:
    """
    Parse products like ``u11 ~u12``, ``|u11|^4``, ``u[10,3]^2``.

    ``~`` marks a conjugated entry; ``|u|^{2k}`` stands for u^k conj(u)^k.
    """
    text = pattern.replace('*', ' ').replace(' ', '')
    if not text:
        raise ParseError('empty Haar pattern')
    plain, conjugated = [], []
    position = 0
    for match in _FACTOR_RE.finditer(text):
        if match.start() != position:
            raise ParseError(f'unexpected text in Haar pattern {pattern!r} at {position}')
        position = match.end()
        if bool(match['abs']) != bool(match['close']):
            raise ParseError(f'unbalanced | in Haar pattern {pattern!r}')
        a, b = (match['a'], match['b']) if match['a'] else (match['c'], match['d'])
        entry = (int(a), int(b))
        if min(entry) < 1:
            raise ParseError(f'Haar indices are 1-based: {match.group(0)!r}')
        power = int(match['power'] or 1)
        if match['abs']:
            if match['conj'] or power % 2:
                raise ParseError(f'|u|^k needs an even k and no conjugation: {match.group(0)!r}')
            plain += [entry] * (power // 2)
            conjugated += [entry] * (power // 2)
        elif match['conj']:
            conjugated += [entry] * power
        else:
            plain += [entry] * power
    if position != len(text):
        raise ParseError(f'unexpected text in Haar pattern {pattern!r} at {position}')
    return HaarPattern(tuple(e[0] for e in conjugated), tuple(e[1] for e in conjugated),
                       tuple(e[0] for e in plain), tuple(e[1] for e in plain))


def pattern_expectation(pattern: HaarPattern, N) -> Fraction:
    """Unbalanced monomials integrate to zero."""
    if len(pattern.i) != len(pattern.i_prime):
        return Fraction(0)
    return haar_monomial_expectation(pattern.i_prime, pattern.j_prime, pattern.i, pattern.j, N)


def _check_chain(V: SetPartition, W: SetPartition, sigma: Permutation):
    if not (sigma.orbit_partition().leq(V) and V.leq(W)):
        raise PreconditionError(f'relative cumulant needs sigma <= V <= W, got {sigma}, {V}, {W}')


@lru_cache(maxsize=None)
def wg_relative_cumulant(V: SetPartition, W: SetPartition, sigma: Permutation, N) -> Fraction:
    """C_{V,W}(sigma) = sum_{V <= U <= W} Moeb(U, W) Wg(U, sigma)"""
    _check_chain(V, W, sigma)
    return sum((moebius_partition(U, W) * wg_partitioned(U, sigma, N) for U in partitions_between(V, W)),
               Fraction(0))


def wg_from_relative_cumulants(V: SetPartition, W: SetPartition, sigma: Permutation, N) -> Fraction:
    """Wg(W, sigma) recovered as sum_{V <= U <= W} C_{V,U}(sigma)"""
    _check_chain(V, W, sigma)
    return sum((wg_relative_cumulant(V, U, sigma, N) for U in partitions_between(V, W)), Fraction(0))


def wg_order_bound(V: SetPartition, W: SetPartition, sigma: Permutation) -> int:
    """Largest N-exponent C_{V,W}(sigma) can have: -2n + #sigma + 2#W - 2#V."""
    _check_chain(V, W, sigma)
    return -2 * sigma.n + sigma.cycle_count() + 2 * W.block_count() - 2 * V.block_count()


def leading_exponent(fn: Callable[[int], object], Ns: Sequence[int]) -> float:
    """Slope of log|fn(N)| against log N."""
    if len(Ns) < 2:
        raise PreconditionError('leading exponent needs at least two values of N')
    values = [abs(float(fn(N))) for N in Ns]
    if not all(values):
        raise PreconditionError('leading exponent of a function vanishing at a sample point')
    slope, _ = np.polyfit(np.log(np.asarray(Ns, dtype=float)), np.log(values), 1)
    return float(slope)


def gg_function(pi: Permutation, phi: Callable, N) -> object:
    """G(pi) = sum over (W, sigma) in PS(n) of Wg(sigma pi^-1) phi(W, sigma)."""
    total = Fraction(0)
    pi_inv = pi.inverse()
    for element in enumerate_ps(pi.n, bound=max(pi.n, 1)):
        value = phi(element)
        if value:
            total = total + wg_value(element.perm * pi_inv, N) * value
    return total


def gg(V: SetPartition, pi: Permutation, phi: Callable, N) -> object:
    """G(V, pi): the product of G over the blocks of V."""
    value = Fraction(1)
    for block in V.blocks:
        value = value * gg_function(pi.restrict(block), phi, N)
    return value


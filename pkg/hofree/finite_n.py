"""
Moments and cumulants of unitarily invariant matrix ensembles at finite N.

phi^{(N)}(1_k, pi) is the classical cumulant of the traces along the cycles
of pi; kappa^{(N)} is its Weingarten-transformed counterpart. Both are
multiplicative over blocks and tabled by diagram.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
from sympy import Rational, Symbol, interpolate

from hofree.estimate import Estimate
from hofree.exceptions import ParseError, PreconditionError, SingularSystemError
from hofree.multfn import MultFn, diagrams_up_to
from hofree.partition import SetPartition, moebius_partition, partitions_between
from hofree.permutation import Permutation
from hofree.ps import PartitionedPermutation, enumerate_ps, pp_full
from hofree.utils import fraction_str, to_fraction
from hofree.weingarten import gg, solve_rational, wg_relative_cumulant

logger = logging.getLogger(__name__)

LimitEstimate = namedtuple('LimitEstimate', 'value std_err converged')

KINDS = ('phi', 'kappa')
METHODS = ('relative', 'solve', 'gg')


class FiniteNTable:
    """phi^{(N)} or kappa^{(N)} at one value of N."""

    def __init__(self, N, values: MultFn, kind: str = 'phi'):
        if kind not in KINDS:
            raise PreconditionError(f'table kind must be one of {KINDS}, got {kind!r}')
        self.N = to_fraction(N)
        self.values = values
        self.kind = kind

    @property
    def order(self) -> int:
        return self.values.order_bound

    def evaluate(self, a: PartitionedPermutation):
        return self.values.evaluate(a)

    def __getitem__(self, diagram):
        return self.values[diagram]

    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values.table.values())

    def __eq__(self, other):
        return (isinstance(other, FiniteNTable) and self.kind == other.kind and self.N == other.N
                and self.values == other.values)

    def to_dict(self) -> dict:
        return {'N': fraction_str(self.N), self.kind: self.values.to_list()}

    @classmethod
    def from_dict(cls, data: Mapping) -> 'FiniteNTable':
        kinds = [k for k in KINDS if k in data]
        if len(kinds) != 1 or 'N' not in data:
            raise ParseError('finite-N table needs "N" and exactly one of "phi", "kappa"')
        kind = kinds[0]
        return cls(to_fraction(data['N']), MultFn.from_list(data[kind], kind), kind)

    def __repr__(self):
        return f'{type(self).__name__}<{self.kind}, N={self.N}, order={self.order}>'


@lru_cache(maxsize=None)
def _ps(k: int):
    return tuple(enumerate_ps(k, bound=k))


def _check_kind(table: FiniteNTable, kind: str):
    if table.kind != kind:
        raise PreconditionError(f'expected a {kind} table, got {table.kind}')


def _check_invertible(N: Fraction, order: int):
    if N < order:
        raise SingularSystemError(f'finite-N system of order {order} is not solvable for N={N} < {order}', N)


def _moment_term(kappa: FiniteNTable, target: PartitionedPermutation):
    U, gamma = target.partition, target.perm
    total = Fraction(0)
    for element in _ps(target.n):
        complement = gamma * element.perm.inverse()
        if element.partition.join(complement.orbit_partition()) != U:
            continue
        total = total + kappa.evaluate(element) * kappa.N ** complement.cycle_count()
    return total


def phiN_from_kappaN(kappa: FiniteNTable) -> FiniteNTable:
    """phi(U, gamma) = sum over (V, pi) with V v 0_{gamma pi^-1} = U of kappa(V, pi) N^{#(gamma pi^-1)}"""
    _check_kind(kappa, 'kappa')
    table = {d: _moment_term(kappa, pp_full(d)) for d in diagrams_up_to(kappa.order)}
    return FiniteNTable(kappa.N, MultFn(table, 'phi'), 'phi')


def _cumulant_by_relative(phi: FiniteNTable, gamma: Permutation):
    k = gamma.n
    one = SetPartition.full(k)
    orbits = gamma.orbit_partition()
    gamma_inv = gamma.inverse()
    total = Fraction(0)
    for element in _ps(k):
        value = phi.evaluate(element)
        lower = orbits.join(element.partition)
        total = total + value * wg_relative_cumulant(lower, one, element.perm * gamma_inv, phi.N)
    return total


def _cumulant_by_gg(phi: FiniteNTable, gamma: Permutation):
    one = SetPartition.full(gamma.n)
    total = Fraction(0)
    for U in partitions_between(gamma.orbit_partition(), one):
        total = total + moebius_partition(U, one) * gg(U, gamma, phi.evaluate, phi.N)
    return total


def _cumulants_by_solve(phi: FiniteNTable, k: int):
    elements = _ps(k)
    index = {e: i for i, e in enumerate(elements)}
    rows = [[Fraction(0)] * len(elements) for _ in elements]
    for target in elements:
        for element in elements:
            complement = target.perm * element.perm.inverse()
            if element.partition.join(complement.orbit_partition()) == target.partition:
                rows[index[target]][index[element]] = phi.N ** complement.cycle_count()
    solution = solve_rational(rows, [phi.evaluate(e) for e in elements], phi.N)
    return dict(zip(elements, solution))


def kappaN_from_phiN(phi: FiniteNTable, method: str = 'relative') -> FiniteNTable:
    """
    kappa^{(N)}(1_k, gamma_lambda) for every tabled diagram.

    ``relative`` sums phi against relative Weingarten cumulants, ``gg``
    Moebius-inverts the G-function, ``solve`` solves the square moment
    system over PS(k) exactly.
    """
    _check_kind(phi, 'phi')
    if method not in METHODS:
        raise PreconditionError(f'method must be one of {METHODS}, got {method!r}')
    _check_invertible(phi.N, phi.order)
    table = {}
    if method == 'solve':
        if not phi.is_exact():
            raise PreconditionError('the exact solve needs rational moment data')
        for k in range(1, phi.order + 1):
            solution = _cumulants_by_solve(phi, k)
            for diagram in diagrams_up_to(k):
                if sum(diagram) == k:
                    table[diagram] = solution[pp_full(diagram)]
    else:
        evaluate = _cumulant_by_relative if method == 'relative' else _cumulant_by_gg
        for diagram in diagrams_up_to(phi.order):
            table[diagram] = evaluate(phi, pp_full(diagram).perm)
    logger.debug('kappa table at N=%s up to order %d by %s', phi.N, phi.order, method)
    return FiniteNTable(phi.N, MultFn(table, 'kappa'), 'kappa')


def _scaled_values(tables: Sequence[FiniteNTable], V: SetPartition, pi: Permutation):
    target = PartitionedPermutation(V, pi)
    exponent = pi.n - 2 * V.block_count() + pi.cycle_count()
    return [t.evaluate(target) * t.N ** exponent for t in tables]


def kappa_limit(tables: Sequence[FiniteNTable], V: SetPartition, pi: Permutation,
                tolerance: float = 3.0) -> LimitEstimate:
    """
    N^{n - 2#V + #pi} kappa^{(N)}(V, pi) extrapolated to N = oo by a
    polynomial in 1/N^2 through all points.

    ``converged`` compares against the fit one degree lower.
    """
    if len(tables) < 3:
        raise PreconditionError(f'extrapolation needs at least 3 values of N, got {len(tables)}')
    for t in tables:
        _check_kind(t, 'kappa')
    Ns = [t.N for t in tables]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise PreconditionError(f'values of N must increase, got {[str(N) for N in Ns]}')
    values = _scaled_values(tables, V, pi)

    if all(isinstance(v, Fraction) for v in values):
        t = Symbol('t')
        points = [(Rational(1, 1) / (Rational(N.numerator, N.denominator) ** 2),
                   Rational(v.numerator, v.denominator)) for N, v in zip(Ns, values)]
        full = interpolate(points, t).subs(t, 0)
        lower = interpolate(points[1:], t).subs(t, 0)
        value = Fraction(int(full.p), int(full.q))
        converged = full == lower
        if not converged:
            logger.warning('extrapolation of %s at N=%s is not stable: %s vs %s', pi, Ns, full, lower)
        return LimitEstimate(value, Fraction(0), converged)

    t = np.array([1 / float(N) ** 2 for N in Ns])
    full_weights = np.polyfit(t, np.eye(len(t)), len(t) - 1)[-1]
    lower_weights = np.polyfit(t[1:], np.eye(len(t) - 1), len(t) - 2)[-1]
    full = sum(float(w) * v for w, v in zip(full_weights, values))
    lower = sum(float(w) * v for w, v in zip(lower_weights, values[1:]))
    if isinstance(full, Estimate):
        std_err = full.std_err
        gap = abs(full.value - float(lower))
        converged = gap <= tolerance * max(std_err, 1e-12)
        value = full.value
    else:
        std_err = 0.0
        value = float(full)
        gap = abs(value - float(lower))
        converged = gap <= 1e-9 * max(1.0, abs(value))
    if not converged:
        logger.warning('extrapolation of %s at N=%s is not stable (gap %.3g)', pi, Ns, gap)
    return LimitEstimate(value, std_err, converged)

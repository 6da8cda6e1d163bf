"""
Classical (set-partition) cumulants of commuting random variables.

Moment data is supplied as a callable taking a tuple of variable labels
and returning the expectation of their product. Values may be exact
``Fraction`` s or floats / numpy scalars; nothing here assumes either.
"""
import logging
import operator
from functools import reduce
from typing import Callable, Hashable, Sequence

from hofree.exceptions import MissingValueError
from hofree.partition import SetPartition, enumerate_partitions, moebius_partition, partitions_between

logger = logging.getLogger(__name__)


def _product(values):
    return reduce(operator.mul, values, 1)


class ClassicalCumulants:
    """Cumulant evaluator on top of a moment functional."""

    def __init__(self, moment: Callable[[tuple], object]):
        self._moment = moment
        self._cache = {}

    def moment(self, labels: Sequence[Hashable]):
        key = tuple(sorted(labels, key=repr))
        if key not in self._cache:
            try:
                self._cache[key] = self._moment(key)
            except KeyError as e:
                raise MissingValueError(f'no moment data for {key}') from e
        return self._cache[key]

    def partitioned_moment(self, labels: Sequence[Hashable], V: SetPartition):
        return _product(self.moment([labels[i - 1] for i in block]) for block in V.blocks)

    def partitioned_cumulant(self, labels: Sequence[Hashable], V: SetPartition):
        """k_V = sum over W <= V of E_W * Möb(W, V)."""
        logger.debug('cumulant over %s', V)
        total = 0
        for W in partitions_between(SetPartition.singletons(len(labels)), V):
            total = total + self.partitioned_moment(labels, W) * int(moebius_partition(W, V))
        return total

    def cumulant(self, labels: Sequence[Hashable]):
        return self.partitioned_cumulant(labels, SetPartition.full(len(labels)))

    def product_cumulant(self, labels: Sequence[Hashable], U: SetPartition):
        """Cumulant whose arguments are the products over the blocks of U."""
        products = [[labels[i - 1] for i in block] for block in U.blocks]
        total = 0
        for W in enumerate_partitions(len(products)):
            weight = int(moebius_partition(W, SetPartition.full(len(products))))
            total = total + weight * _product(
                self.moment([x for k in block for x in products[k - 1]]) for block in W.blocks)
        return total

    def leonov_shiryaev(self, labels: Sequence[Hashable], U: SetPartition):
        """Sum of k_V over all V with V v U = 1_n; equals product_cumulant."""
        n = len(labels)
        one = SetPartition.full(n)
        total = 0
        for V in enumerate_partitions(n):
            if V.join(U) == one:
                total = total + self.partitioned_cumulant(labels, V)
        return total


def classical_moments(cumulant: Callable[[tuple], object], labels: Sequence[Hashable]):
    """E[a_1...a_n] = sum over all partitions V of the blockwise product of k."""
    logger.debug('moment of %d variables from cumulants', len(labels))
    total = 0
    for V in enumerate_partitions(len(labels)):
        total = total + _product(cumulant(tuple(labels[i - 1] for i in block)) for block in V.blocks)
    return total


import logging
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from hofree.exceptions import BoundExceededError, MissingValueError, ParseError, PreconditionError
from hofree.partition import SetPartition
from hofree.permutation import Permutation, gamma_of_profile
from hofree.ps import (DEFAULT_ENUM_BOUND, PartitionedPermutation, check_bound, disc_second_factorizations,
                       enumerate_partitions_over, factorizations2, pp_full)
from hofree.typing import Diagram
from hofree.utils import fraction_str, to_fraction

logger = logging.getLogger(__name__)


def diagrams_of(n: int, largest: int = None) -> Iterator[Diagram]:
    """Young diagrams of size n, largest part first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in diagrams_of(n - part, part):
            yield (part,) + rest


def diagrams_up_to(n: int) -> List[Diagram]:
    return [d for k in range(1, n + 1) for d in diagrams_of(k)]


def normalize_diagram(diagram: Iterable[int]) -> Diagram:
    diagram = tuple(sorted((int(k) for k in diagram), reverse=True))
    if any(k < 1 for k in diagram):
        raise PreconditionError(f'diagram parts must be positive: {diagram}')
    return diagram


def _coerce(value):
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return to_fraction(value)
    return value


class MultFn:
    """
    A multiplicative function on partitioned permutations.

    Stored by Young diagram: ``f[(l1, ..., lk)]`` is the value at a single
    block carrying cycles of lengths l1 >= ... >= lk. The empty diagram is 1.
    Values are exact Fractions except for tables built from sampled data.
    """

    def __init__(self, table: Mapping[Diagram, object] = None, name: str = None):
        self.table = {normalize_diagram(k): _coerce(v) for k, v in (table or {}).items()}
        self.table.pop((), None)
        self.name = name

    @classmethod
    def from_values(cls, values: Mapping[Diagram, object], up_to: int = None, default=None,
                    name: str = None) -> 'MultFn':
        table = {normalize_diagram(k): v for k, v in values.items()}
        if up_to is not None and default is not None:
            for diagram in diagrams_up_to(up_to):
                table.setdefault(diagram, default)
        return cls(table, name)

    @classmethod
    def zeta(cls, up_to: int) -> 'MultFn':
        return cls({d: int(len(d) == 1) for d in diagrams_up_to(up_to)}, 'zeta')

    @classmethod
    def delta(cls, up_to: int) -> 'MultFn':
        return cls({d: int(d == (1,)) for d in diagrams_up_to(up_to)}, 'delta')

    @classmethod
    def random(cls, seed: int, up_to: int, low: int = -5, high: int = 5, denominators=(1, 2, 3)) -> 'MultFn':
        rng = random.Random(seed)
        return cls({d: Fraction(rng.randint(low, high), rng.choice(denominators))
                    for d in diagrams_up_to(up_to)}, f'random[{seed}]')

    @property
    def order_bound(self) -> int:
        return max((sum(d) for d in self.table), default=0)

    def __getitem__(self, diagram) -> object:
        diagram = normalize_diagram(diagram)
        if not diagram:
            return Fraction(1)
        try:
            return self.table[diagram]
        except KeyError as e:
            raise MissingValueError(f'{self.name or "function"} has no value at diagram {diagram}') from e

    def get(self, diagram, default=None):
        try:
            return self[diagram]
        except MissingValueError:
            return default

    def __contains__(self, diagram):
        return normalize_diagram(diagram) in self.table

    def diagrams(self) -> List[Diagram]:
        return sorted(self.table, key=lambda d: (sum(d), len(d), [-k for k in d]))

    def items(self) -> List[Tuple[Diagram, object]]:
        return [(d, self.table[d]) for d in self.diagrams()]

    def evaluate(self, a: PartitionedPermutation):
        value = Fraction(1)
        for diagram in a.block_diagrams():
            value = value * self[diagram]
        return value

    def is_disc_supported(self) -> bool:
        return all(v == 0 for d, v in self.table.items() if len(d) > 1)

    def restrict(self, up_to: int) -> 'MultFn':
        return MultFn({d: v for d, v in self.table.items() if sum(d) <= up_to}, self.name)

    def __add__(self, other: 'MultFn') -> 'MultFn':
        if set(self.table) != set(other.table):
            raise PreconditionError('multiplicative functions tabled on different diagrams')
        return MultFn({d: self.table[d] + other.table[d] for d in self.table})

    def scale(self, factor) -> 'MultFn':
        return MultFn({d: v * factor for d, v in self.table.items()})

    def __eq__(self, other):
        return isinstance(other, MultFn) and self.table == other.table

    def to_list(self) -> List[dict]:
        return [{'diagram': list(d), 'value': fraction_str(v)} for d, v in self.items()]

    @classmethod
    def from_list(cls, entries: Iterable[Mapping], name: str = None) -> 'MultFn':
        try:
            return cls({tuple(e['diagram']): to_fraction(e['value']) for e in entries}, name)
        except (KeyError, TypeError) as e:
            raise ParseError(f'malformed multiplicative function entries: {e}') from e

    def __repr__(self):
        return f'{type(self).__name__}<{self.name or "anonymous"}, order={self.order_bound}>'


def convolve(f: MultFn, g: MultFn, up_to: int, bound: int = DEFAULT_ENUM_BOUND,
             allow_large: bool = False, disc_shortcut: bool = True) -> MultFn:
    """(f * g)(lambda) summed over the factorizations of (1_n, gamma_lambda)."""
    if up_to > min(f.order_bound, g.order_bound):
        raise BoundExceededError(
            f'convolution up to {up_to} needs both tables to that order '
            f'(have {f.order_bound} and {g.order_bound})')
    check_bound(up_to, bound, allow_large)
    shortcut = disc_shortcut and g.is_disc_supported()
    table = {}
    for diagram in diagrams_up_to(up_to):
        target = pp_full(diagram)
        pairs = disc_second_factorizations(target, bound, allow_large) if shortcut else \
            factorizations2(target, bound, allow_large)
        total = Fraction(0)
        for a, b in pairs:
            total = total + f.evaluate(a) * g.evaluate(b)
        table[diagram] = total
    logger.debug('convolved %r and %r up to %d (disc shortcut: %s)', f, g, up_to, shortcut)
    return MultFn(table)


@lru_cache(maxsize=None)
def moebius_table(up_to: int, bound: int = DEFAULT_ENUM_BOUND, allow_large: bool = False) -> MultFn:
    """
    The inverse of zeta by triangular solve of mu * zeta = delta.

    Within each size, diagrams with fewer parts come first: every other
    term of the equation for (1_n, gamma_lambda) involves a permutation with
    fewer cycles or strictly smaller blocks.
    """
    check_bound(up_to, bound, allow_large)
    mu = MultFn(name='moebius')
    for n in range(1, up_to + 1):
        for diagram in sorted(diagrams_of(n), key=len):
            target = pp_full(diagram)
            total = Fraction(int(diagram == (1,)))
            for a, b in disc_second_factorizations(target, bound, allow_large):
                if b.perm.is_identity():
                    continue
                total -= mu.evaluate(a)
            mu.table[diagram] = total
    return mu


@lru_cache(maxsize=None)
def _disc_chains(target: PartitionedPermutation, k: int) -> int:
    """Ordered k-tuples of non-identity disc factors with geodesic product target."""
    if k == 0:
        return int(target.is_disc() and target.perm.is_identity())
    if target.length() < k:
        return 0
    count = 0
    for rest, last in disc_second_factorizations(target, target.n, True):
        if not last.perm.is_identity():
            count += _disc_chains(rest, k - 1)
    return count


def moebius_geometric(target: PartitionedPermutation) -> Fraction:
    """mu = sum_k (-1)^k (zeta - delta)^{*k}"""
    return Fraction(sum((-1) ** k * _disc_chains(target, k) for k in range(target.length() + 1)))


@lru_cache(maxsize=None)
def _moebius_by_transposition(diagram: Diagram) -> Fraction:
    n = sum(diagram)
    if n <= 1:
        return Fraction(1)
    gamma = gamma_of_profile(diagram)
    moved = [i for i in range(1, n + 1) if gamma(i) != i]
    pivot = moved[0] if moved else 1
    total_length = 2 * (n - 1) - gamma.length()
    full = SetPartition.full(n)
    total = Fraction(0)
    for k in range(1, n + 1):
        if k == pivot:
            continue
        transposition = Permutation.from_cycles([(pivot, k)], n)
        pi = transposition * gamma
        doubled = total_length - 1 + pi.length()
        if doubled % 2:
            continue
        blocks = n - doubled // 2
        pair = SetPartition([(pivot, k)] + [(i,) for i in range(1, n + 1) if i not in (pivot, k)], n)
        for V in enumerate_partitions_over(pi, blocks):
            if V.join(pair) != full:
                continue
            term = Fraction(1)
            for block_diagram in PartitionedPermutation(V, pi).block_diagrams():
                term *= _moebius_by_transposition(block_diagram)
            total += term
    return -total


def moebius_recursion(target: PartitionedPermutation) -> Fraction:
    """mu by peeling a disc transposition off the target, blockwise."""
    value = Fraction(1)
    for diagram in target.block_diagrams():
        value *= _moebius_by_transposition(diagram)
    return value


def moebius_first_order_recursion(n: int) -> List[Fraction]:
    """[mu_1, ..., mu_n] from mu_n = -sum_{k<n} mu_k mu_{n-k}."""
    mu = [Fraction(0), Fraction(1)]
    for k in range(2, n + 1):
        mu.append(-sum(mu[j] * mu[k - j] for j in range(1, k)))
    return mu[1:n + 1]


def moebius_second_order_recursion(m: int, n: int) -> Dict[Tuple[int, int], Fraction]:
    """
    mu_{a,b} for a <= m, b <= n from
    -mu_{a,b} = a mu_{a+b} + sum_{k<b} (mu_{a,k} mu_{b-k} + mu_{a,b-k} mu_k).
    """
    first = [Fraction(1)] + moebius_first_order_recursion(m + n)

    def mu1(k):
        return first[k] if k else Fraction(1)

    table = {}

    def mu2(a, b):
        key = (a, b)
        if key not in table:
            total = a * mu1(a + b)
            for k in range(1, b):
                total += mu2(a, k) * mu1(b - k) + mu2(a, b - k) * mu1(k)
            table[key] = -total
        return table[key]

    return {(a, b): mu2(a, b) for a in range(1, m + 1) for b in range(1, n + 1)}

import itertools
import logging
from collections import namedtuple
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple, Union

from hofree.exceptions import (BoundExceededError, InvalidPartitionedPermutationError, PreconditionError,
                               SizeMismatchError)
from hofree.partition import SetPartition, group_partitions
from hofree.permutation import (Permutation, check_profile, cycle_count_of, enumerate_snc, gamma_of_profile)

logger = logging.getLogger(__name__)

DEFAULT_ENUM_BOUND = 8

GeodesicConditions = namedtuple('GeodesicConditions', 'lengths_add left_minimal right_minimal joins_commute')
Classification = namedtuple('Classification', 'is_disc is_tunnel gamma_planar gamma_minimal')


class PartitionedPermutation:
    """A pair (V, pi) whose blocks are pi-invariant; length 2|V| - |pi|."""

    __slots__ = ('partition', 'perm')

    def __init__(self, partition: SetPartition, perm: Permutation):
        if partition.n != perm.n:
            raise SizeMismatchError(f'partition of {partition.n} points with permutation of {perm.n}')
        if not partition.is_invariant_under(perm):
            raise InvalidPartitionedPermutationError(
                f'blocks of {partition} are not invariant under {perm}')
        self.partition = partition
        self.perm = perm

    @property
    def n(self) -> int:
        return self.perm.n

    def length(self) -> int:
        return 2 * self.partition.length() - self.perm.length()

    def is_disc(self) -> bool:
        return self.partition.block_count() == self.perm.cycle_count()

    def block_diagrams(self) -> List[Tuple[int, ...]]:
        """Cycle type of pi restricted to each block, in block order."""
        lengths = {c[0]: len(c) for c in self.perm.cycles()}
        cycles_of = {}
        for cycle in self.perm.cycles():
            cycles_of.setdefault(self.partition.block_of(cycle[0]), []).append(lengths[cycle[0]])
        return [tuple(sorted(cycles_of[block], reverse=True)) for block in self.partition.blocks]

    def to_dict(self) -> dict:
        return {
            'blocks': [list(b) for b in self.partition.blocks],
            'perm_cycles': [list(c) for c in self.perm.cycles()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'PartitionedPermutation':
        blocks = [tuple(b) for b in data['blocks']]
        n = sum(len(b) for b in blocks)
        return cls(SetPartition(blocks, n), Permutation.from_cycles(data['perm_cycles'], n))

    def __eq__(self, other):
        return (isinstance(other, PartitionedPermutation)
                and self.partition == other.partition and self.perm == other.perm)

    def __hash__(self):
        return hash((self.partition, self.perm))

    def __str__(self):
        return f'(V={self.partition}, π={self.perm})'

    def __repr__(self):
        return f'{type(self).__name__}<{self}>'


class Zero:
    """The absorbing product value when lengths fail to add."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return 'Zero'


ZERO = Zero()
ProductResult = Union[PartitionedPermutation, Zero]


def pp_make(partition: SetPartition, perm: Permutation) -> PartitionedPermutation:
    return PartitionedPermutation(partition, perm)


def pp_disc(perm: Permutation) -> PartitionedPermutation:
    return PartitionedPermutation(perm.orbit_partition(), perm)


def pp_identity(n: int) -> PartitionedPermutation:
    return pp_disc(Permutation.identity(n))


def pp_full(profile: Sequence[int]) -> PartitionedPermutation:
    """(1_n, gamma_profile)"""
    gamma = gamma_of_profile(profile)
    return PartitionedPermutation(SetPartition.full(gamma.n), gamma)


def pp_multiply(a: PartitionedPermutation, b: PartitionedPermutation) -> ProductResult:
    if a.n != b.n:
        raise SizeMismatchError(f'partitioned permutations on {a.n} and {b.n} points')
    product = PartitionedPermutation(a.partition.join(b.partition), a.perm * b.perm)
    if a.length() + b.length() == product.length():
        return product
    return ZERO


def geodesic_conditions(a: PartitionedPermutation, b: PartitionedPermutation) -> GeodesicConditions:
    if a.n != b.n:
        raise SizeMismatchError(f'partitioned permutations on {a.n} and {b.n} points')
    V, pi, W, sigma = a.partition, a.perm, b.partition, b.perm
    orbits_pi, orbits_sigma = pi.orbit_partition(), sigma.orbit_partition()
    pi_sigma = orbits_pi.join(orbits_sigma).length()
    v_sigma = V.join(orbits_sigma).length()
    pi_w = orbits_pi.join(W).length()
    return GeodesicConditions(
        pi.length() + sigma.length() + (pi * sigma).length() == 2 * pi_sigma,
        V.length() + pi_sigma == pi.length() + v_sigma,
        W.length() + pi_sigma == sigma.length() + pi_w,
        v_sigma + pi_w == V.join(W).length() + pi_sigma,
    )


def classify(a: PartitionedPermutation, gamma: Permutation) -> Classification:
    if a.n != gamma.n:
        raise SizeMismatchError(f'partitioned permutation on {a.n} points, gamma on {gamma.n}')
    V, pi = a.partition, a.perm
    orbits_gamma = gamma.orbit_partition()
    pi_gamma = pi.orbit_partition().join(orbits_gamma).length()
    return Classification(
        a.is_disc(),
        V.length() == pi.length() + 1,
        pi.length() + (pi.inverse() * gamma).length() + gamma.length() == 2 * pi_gamma,
        V.join(orbits_gamma).length() - pi_gamma == V.length() - pi.length(),
    )


def check_bound(n: int, bound: int = DEFAULT_ENUM_BOUND, allow_large: bool = False):
    if n > bound and not allow_large:
        raise BoundExceededError(f'n={n} exceeds the enumeration bound {bound}')


def enumerate_partitions_over(perm: Permutation, blocks: int = None,
                              within: SetPartition = None) -> Iterator[SetPartition]:
    """
    Partitions V >= 0_perm, optionally with a fixed number of blocks and
    optionally below ``within``.
    """
    cycles = perm.cycles()
    labels = within.labels if within is not None else None
    for groups in group_partitions(cycles, blocks):
        if labels is not None and any(
                len({labels[c[0] - 1] for c in group}) > 1 for group in groups):
            continue
        yield SetPartition((sum(group, ()) for group in groups), perm.n)


def enumerate_ps(n: int, bound: int = DEFAULT_ENUM_BOUND, allow_large: bool = False) -> List[PartitionedPermutation]:
    check_bound(n, bound, allow_large)
    result = []
    for images in itertools.permutations(range(n)):
        perm = Permutation(images, zero_based=True)
        for V in enumerate_partitions_over(perm):
            result.append(PartitionedPermutation(V, perm))
    logger.debug('PS(%d) has %d elements', n, len(result))
    return result


def _block_preserving_images(U: SetPartition) -> Iterator[Tuple[int, ...]]:
    blocks = [tuple(i - 1 for i in b) for b in U.blocks]
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        images = [0] * U.n
        for block, image in zip(blocks, choice):
            for i, j in zip(block, image):
                images[i] = j
        yield tuple(images)


def _factorizations(target: PartitionedPermutation, second_disc: bool) -> List[Tuple[PartitionedPermutation,
                                                                                   PartitionedPermutation]]:
    U, gamma = target.partition, target.perm
    n, total = target.n, target.length()
    gamma_images = gamma.zero_based
    result = []
    for images in _block_preserving_images(U):
        inverse = [0] * n
        for i, j in enumerate(images):
            inverse[j] = i
        sigma_images = tuple(inverse[gamma_images[i]] for i in range(n))
        pi_cycles, sigma_cycles = cycle_count_of(images), cycle_count_of(sigma_images)
        slack = total - (n - pi_cycles) - (n - sigma_cycles)
        if slack < 0 or slack % 2:
            continue
        slack //= 2
        if second_disc and slack > (pi_cycles - len(U.blocks)):
            continue
        pi = Permutation(images, zero_based=True)
        sigma = Permutation(sigma_images, zero_based=True)
        split = [(slack, 0)] if second_disc else [(e, slack - e) for e in range(slack + 1)]
        for e_v, e_w in split:
            if pi_cycles - e_v < 1 or sigma_cycles - e_w < 1:
                continue
            lefts = list(enumerate_partitions_over(pi, pi_cycles - e_v, U))
            if not lefts:
                continue
            rights = list(enumerate_partitions_over(sigma, sigma_cycles - e_w, U))
            for V in lefts:
                for W in rights:
                    if V.join(W) == U:
                        result.append((PartitionedPermutation(V, pi), PartitionedPermutation(W, sigma)))
    return result


@lru_cache(maxsize=4096)
def factorizations2(target: PartitionedPermutation, bound: int = DEFAULT_ENUM_BOUND,
                    allow_large: bool = False) -> Tuple[Tuple[PartitionedPermutation, PartitionedPermutation], ...]:
    """All ordered pairs (a, b) with a * b == target."""
    check_bound(target.n, bound, allow_large)
    result = tuple(_factorizations(target, second_disc=False))
    logger.debug('%s has %d factorizations', target, len(result))
    return result


@lru_cache(maxsize=4096)
def disc_second_factorizations(target: PartitionedPermutation, bound: int = DEFAULT_ENUM_BOUND,
                               allow_large: bool = False):
    """Factorizations whose second factor is a disc permutation (0_sigma, sigma)."""
    check_bound(target.n, bound, allow_large)
    return tuple(_factorizations(target, second_disc=True))


def factorizations2_bruteforce(target: PartitionedPermutation) -> List[Tuple[PartitionedPermutation,
                                                                             PartitionedPermutation]]:
    """Reference pair scan over PS(n) x PS(n)."""
    elements = enumerate_ps(target.n, bound=6)
    return [(a, b) for a in elements for b in elements if pp_multiply(a, b) == target]


def ps_nc(U: SetPartition, gamma: Permutation) -> List[PartitionedPermutation]:
    """All (V, pi) with (V, pi) * (0, pi^-1 gamma) == (U, gamma)."""
    try:
        target = PartitionedPermutation(U, gamma)
    except InvalidPartitionedPermutationError as e:
        raise PreconditionError(f'invalid target ({U}, {gamma})') from e
    return [a for a, _ in disc_second_factorizations(target)]


def tunnel_joins(pi1: Permutation, pi2: Permutation) -> Iterator[PartitionedPermutation]:
    """0_{pi1 x pi2} with one cycle of pi1 merged with one cycle of pi2."""
    m = pi1.n
    product = direct_product(pi1, pi2)
    first = [c for c in product.cycles() if c[0] <= m]
    second = [c for c in product.cycles() if c[0] > m]
    for c1 in first:
        for c2 in second:
            blocks = [c for c in product.cycles() if c not in (c1, c2)] + [c1 + c2]
            yield PartitionedPermutation(SetPartition(blocks, product.n), product)


def direct_product(pi1: Permutation, pi2: Permutation) -> Permutation:
    m = pi1.n
    return Permutation(pi1.zero_based + tuple(m + j for j in pi2.zero_based), zero_based=True)


def split_product(perm: Permutation, m: int) -> Tuple[Permutation, Permutation]:
    """Inverse of direct_product for a permutation preserving {1..m}."""
    images = perm.zero_based
    if any((i < m) != (j < m) for i, j in enumerate(images)):
        raise PreconditionError(f'{perm} does not preserve 1..{m}')
    return (Permutation(images[:m], zero_based=True),
            Permutation(tuple(j - m for j in images[m:]), zero_based=True))


def factorizations_disc_tunnel(profile: Sequence[int]) -> dict:
    """
    The disc/tunnel families of factorizations of (1, gamma_profile).

    One circle gives ``{'disc': [...]}``; two circles give the families
    ``'a'`` (both disc, annular), ``'b'`` (tunnel times disc) and
    ``'c'`` (disc times tunnel).
    """
    profile = check_profile(profile)
    if len(profile) == 1:
        gamma = gamma_of_profile(profile)
        return {'disc': [(pp_disc(pi), pp_disc(pi.inverse() * gamma)) for pi in enumerate_snc(profile)]}
    if len(profile) != 2:
        raise PreconditionError(f'disc/tunnel families need one or two circles, got {profile}')
    m, n = profile
    gamma = gamma_of_profile(profile)
    families = {'a': [(pp_disc(pi), pp_disc(pi.inverse() * gamma)) for pi in enumerate_snc(profile)],
                'b': [], 'c': []}
    gamma_m, gamma_n = gamma_of_profile((m,)), gamma_of_profile((n,))
    for pi1 in enumerate_snc((m,)):
        for pi2 in enumerate_snc((n,)):
            pi = direct_product(pi1, pi2)
            sigma = pi.inverse() * gamma
            for tunnel in tunnel_joins(pi1, pi2):
                families['b'].append((tunnel, pp_disc(sigma)))
            for tunnel in tunnel_joins(pi1.inverse() * gamma_m, pi2.inverse() * gamma_n):
                families['c'].append((pp_disc(pi), tunnel))
    return families


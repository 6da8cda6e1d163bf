import itertools
import re
from collections import namedtuple
from typing import Iterable, Iterator, List, Sequence, Tuple

from hofree.exceptions import InvalidPartitionedPermutationError, ParseError, SizeMismatchError
from hofree.typing import Diagram, Profile

_CYCLE_RE = re.compile(r'\(([^()]*)\)')

NoncrossingFlags = namedtuple('NoncrossingFlags', 'is_connected is_disc_noncrossing is_annular_noncrossing')


class Permutation:
    """
    A bijection of {1..n}.

    Internally stored 0-based; every public method speaks 1-based.
    Composition follows ``(p * q)(i) == p(q(i))``.
    """

    __slots__ = ('_images', '_cycles')

    def __init__(self, images: Sequence[int], zero_based: bool = False):
        images = tuple(images) if zero_based else tuple(i - 1 for i in images)
        if sorted(images) != list(range(len(images))):
            raise InvalidPartitionedPermutationError(
                f'images are not a bijection of 1..{len(images)}: {images}')
        self._images = images
        self._cycles = None

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(range(n), zero_based=True)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int = None) -> 'Permutation':
        cycles = [tuple(c) for c in cycles]
        points = [i for c in cycles for i in c]
        if len(points) != len(set(points)) or any(i < 1 for i in points):
            raise InvalidPartitionedPermutationError(f'malformed cycles: {cycles}')
        if n is None:
            n = max(points, default=0)
        if points and max(points) > n:
            raise SizeMismatchError(f'cycle point {max(points)} exceeds n={n}')
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b - 1
        return cls(images, zero_based=True)

    @classmethod
    def parse(cls, text: str, n: int = None) -> 'Permutation':
        """Parse cycle notation such as ``(1,3)(2)``; whitespace is ignored."""
        stripped = text.replace(' ', '')
        if stripped in ('', '()', 'id', 'e'):
            if n is None:
                raise ParseError(f'cannot infer n from {text!r}')
            return cls.identity(n)
        if _CYCLE_RE.sub('', stripped):
            raise ParseError(f'invalid cycle notation: {text!r}')
        try:
            cycles = [tuple(int(x) for x in body.split(',') if x)
                      for body in _CYCLE_RE.findall(stripped)]
            return cls.from_cycles(cycles, n)
        except (ValueError, InvalidPartitionedPermutationError) as e:
            raise ParseError(f'invalid cycle notation: {text!r}') from e

    @property
    def n(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in self._images)

    @property
    def zero_based(self) -> Tuple[int, ...]:
        return self._images

    def __call__(self, i: int) -> int:
        return self._images[i - 1] + 1

    def _check_size(self, other: 'Permutation'):
        if self.n != other.n:
            raise SizeMismatchError(f'permutations on {self.n} and {other.n} points')

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        self._check_size(other)
        mine = self._images
        return Permutation([mine[j] for j in other._images], zero_based=True)

    def compose(self, other: 'Permutation') -> 'Permutation':
        return self * other

    def inverse(self) -> 'Permutation':
        inv = [0] * self.n
        for i, j in enumerate(self._images):
            inv[j] = i
        return Permutation(inv, zero_based=True)

    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        """Cycles, each led by its smallest element, ordered by that element."""
        if self._cycles is None:
            self._cycles = tuple(tuple(i + 1 for i in c) for c in zero_cycles(self._images))
        return self._cycles

    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> Diagram:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def length(self) -> int:
        return self.n - self.cycle_count()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images))

    def orbit_partition(self):
        from hofree.partition import SetPartition
        return SetPartition(self.cycles(), self.n)

    def restrict(self, block: Sequence[int]) -> 'Permutation':
        """The permutation induced on an invariant block, relabeled in increasing order."""
        block = sorted(block)
        position = {x: k for k, x in enumerate(block)}
        try:
            return Permutation([position[self(x)] for x in block], zero_based=True)
        except KeyError as e:
            raise InvalidPartitionedPermutationError(
                f'block {block} is not invariant under {self}') from e

    def conjugate(self, by: 'Permutation') -> 'Permutation':
        return by * self * by.inverse()

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other):
        return self._images < other._images

    def __hash__(self):
        return hash(self._images)

    def __str__(self):
        if self.n == 0:
            return '()'
        return ''.join('(' + ','.join(map(str, c)) + ')' for c in self.cycles())

    def __repr__(self):
        return f'{type(self).__name__}<{self}>'


def zero_cycles(images: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(images)
    cycles = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = images[i]
        cycles.append(tuple(cycle))
    return cycles


def cycle_count_of(images: Sequence[int]) -> int:
    seen = [False] * len(images)
    count = 0
    for start in range(len(images)):
        if seen[start]:
            continue
        count += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = images[i]
    return count


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(n)):
        yield Permutation(images, zero_based=True)


def check_profile(profile: Sequence[int]) -> Profile:
    profile = tuple(profile)
    if not profile:
        raise InvalidPartitionedPermutationError('empty profile')
    if any(int(k) != k or k < 1 for k in profile):
        raise InvalidPartitionedPermutationError(f'profile entries must be positive: {profile}')
    return profile


def gamma_of_profile(profile: Sequence[int]) -> Permutation:
    """gamma_{n1,...,nr}: consecutive cycles (1..n1)(n1+1..n1+n2)..."""
    profile = check_profile(profile)
    cycles, start = [], 1
    for size in profile:
        cycles.append(tuple(range(start, start + size)))
        start += size
    return Permutation.from_cycles(cycles, sum(profile))


def kreweras_complement(p: Permutation, gamma: Permutation) -> Permutation:
    return p.inverse() * gamma


def is_connected(p: Permutation, profile: Sequence[int]) -> bool:
    """Whether p and gamma_profile generate a transitive group."""
    gamma = gamma_of_profile(profile)
    if p.n != gamma.n:
        raise SizeMismatchError(f'permutation on {p.n} points, profile of total {gamma.n}')
    return p.orbit_partition().join(gamma.orbit_partition()).block_count() == 1


def is_noncrossing(p: Permutation, profile: Sequence[int]) -> bool:
    """Connected with |p| + |p^-1 gamma| = |gamma| + 2(r-1)."""
    profile = check_profile(profile)
    gamma = gamma_of_profile(profile)
    if p.n != gamma.n:
        raise SizeMismatchError(f'permutation on {p.n} points, profile of total {gamma.n}')
    total = p.length() + kreweras_complement(p, gamma).length()
    if total != gamma.length() + 2 * (len(profile) - 1):
        return False
    return len(profile) == 1 or is_connected(p, profile)


def noncrossing_predicates(p: Permutation, profile: Sequence[int]) -> NoncrossingFlags:
    """
    The three non-crossing tests for ``p`` against circles of the given sizes.

    The disc test always uses the single n-cycle; the annular test uses the
    profile's circles and requires connectedness.
    """
    profile = check_profile(profile)
    if p.n != sum(profile):
        raise SizeMismatchError(f'permutation on {p.n} points, profile of total {sum(profile)}')
    gamma_n = gamma_of_profile((p.n,))
    disc = p.length() + (gamma_n * p.inverse()).length() == p.n - 1
    return NoncrossingFlags(is_connected(p, profile), disc, is_noncrossing(p, profile))


def enumerate_snc(profile: Sequence[int]) -> List[Permutation]:
    """Brute force over S_n: all connected non-crossing permutations of the profile."""
    profile = check_profile(profile)
    gamma = gamma_of_profile(profile)
    n, r = gamma.n, len(profile)
    gamma_images = gamma.zero_based
    target = gamma.length() + 2 * (r - 1)
    circle_of = [k for k, size in enumerate(profile) for _ in range(size)]
    result = []
    for images in itertools.permutations(range(n)):
        # |p^-1 gamma| = n - #cycles(p^-1 gamma); p^-1 gamma conjugate to gamma p^-1
        inverse = [0] * n
        for i, j in enumerate(images):
            inverse[j] = i
        complement = [inverse[gamma_images[i]] for i in range(n)]
        if 2 * n - cycle_count_of(images) - cycle_count_of(complement) != target:
            continue
        if r > 1 and not _touches_all_circles(images, circle_of, r):
            continue
        result.append(Permutation(images, zero_based=True))
    return result


def _touches_all_circles(images, circle_of, r) -> bool:
    # circles are transitive under gamma, so it suffices to join circles via p
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in enumerate(images):
        a, b = find(circle_of[i]), find(circle_of[j])
        if a != b:
            parent[a] = b
    return len({find(k) for k in range(r)}) == 1

import logging
import re
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, List, Sequence, Tuple

from hofree.exceptions import InvalidPartitionedPermutationError, ParseError, PreconditionError, SizeMismatchError
from hofree.typing import Block

logger = logging.getLogger(__name__)

_BLOCK_RE = re.compile(r'\{([^{}]*)\}')


class SetPartition:
    """
    A partition of {1..n} into non-empty blocks.

    Blocks are stored as sorted tuples ordered by their smallest element, so
    equal partitions compare and hash equal.
    """

    __slots__ = ('n', 'blocks', '_labels')

    def __init__(self, blocks: Iterable[Iterable[int]], n: int = None):
        blocks = [tuple(sorted(b)) for b in blocks]
        points = [i for b in blocks for i in b]
        if n is None:
            n = len(points)
        if any(not b for b in blocks) or sorted(points) != list(range(1, n + 1)):
            raise InvalidPartitionedPermutationError(
                f'blocks {blocks} do not partition 1..{n}')
        self.n = n
        self.blocks = tuple(sorted(blocks))
        labels = [0] * n
        for k, block in enumerate(self.blocks):
            for i in block:
                labels[i - 1] = k
        self._labels = tuple(labels)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> 'SetPartition':
        groups = {}
        for i, label in enumerate(labels):
            groups.setdefault(label, []).append(i + 1)
        return cls(groups.values(), len(labels))

    @classmethod
    def singletons(cls, n: int) -> 'SetPartition':
        return cls(((i,) for i in range(1, n + 1)), n)

    @classmethod
    def full(cls, n: int) -> 'SetPartition':
        return cls([tuple(range(1, n + 1))] if n else [], n)

    @classmethod
    def parse(cls, text: str, n: int = None) -> 'SetPartition':
        """Parse ``{{1,3},{2}}`` or ``{1,3}{2}``."""
        stripped = text.replace(' ', '')
        if stripped.startswith('{{') and stripped.endswith('}}'):
            stripped = stripped[1:-1]
        bodies = _BLOCK_RE.findall(stripped)
        if _BLOCK_RE.sub('', stripped).replace(',', ''):
            raise ParseError(f'invalid partition notation: {text!r}')
        try:
            blocks = [tuple(int(x) for x in body.split(',') if x) for body in bodies]
            return cls(blocks, n)
        except (ValueError, InvalidPartitionedPermutationError) as e:
            raise ParseError(f'invalid partition notation: {text!r}') from e

    @property
    def labels(self) -> Tuple[int, ...]:
        return self._labels

    def block_count(self) -> int:
        return len(self.blocks)

    def length(self) -> int:
        return self.n - len(self.blocks)

    def block_of(self, i: int) -> Block:
        return self.blocks[self._labels[i - 1]]

    def _check_size(self, other: 'SetPartition'):
        if self.n != other.n:
            raise SizeMismatchError(f'partitions of {self.n} and {other.n} points')

    def join(self, other: 'SetPartition') -> 'SetPartition':
        """Least upper bound in the refinement order."""
        self._check_size(other)
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for partition in (self, other):
            for block in partition.blocks:
                root = find(block[0] - 1)
                for i in block[1:]:
                    other_root = find(i - 1)
                    if other_root != root:
                        parent[other_root] = root
        return SetPartition.from_labels([find(i) for i in range(self.n)])

    def __or__(self, other):
        return self.join(other)

    def leq(self, other: 'SetPartition') -> bool:
        """Whether every block of self lies inside a block of other."""
        self._check_size(other)
        theirs = other._labels
        return all(len({theirs[i - 1] for i in block}) == 1 for block in self.blocks)

    def __le__(self, other):
        return self.leq(other)

    def is_invariant_under(self, perm) -> bool:
        labels = self._labels
        return all(labels[j] == labels[i] for i, j in enumerate(perm.zero_based))

    def restrict(self, points: Sequence[int]) -> 'SetPartition':
        """The induced partition on a union of blocks, relabeled in increasing order."""
        points = sorted(points)
        position = {x: k + 1 for k, x in enumerate(points)}
        blocks = [tuple(position[i] for i in b) for b in self.blocks if b[0] in position]
        return SetPartition(blocks, len(points))

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __lt__(self, other):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __str__(self):
        return '{' + ','.join('{' + ','.join(map(str, b)) + '}' for b in self.blocks) + '}'

    def __repr__(self):
        return f'{type(self).__name__}<{self}>'


def _restricted_growth(n: int) -> Iterator[List[int]]:
    if n == 0:
        yield []
        return
    labels = [0] * n
    maxima = [0] * n

    def extend(i):
        if i == n:
            yield list(labels)
            return
        for label in range(maxima[i - 1] + 2):
            labels[i] = label
            maxima[i] = max(maxima[i - 1], label)
            yield from extend(i + 1)

    yield from extend(1)


def enumerate_partitions(n: int) -> List[SetPartition]:
    """All Bell(n) partitions of 1..n."""
    result = [SetPartition.from_labels(labels) for labels in _restricted_growth(n)]
    logger.debug('P(%d) has %d partitions', n, len(result))
    return result


def group_partitions(items: Sequence, blocks: int = None) -> Iterator[List[Tuple]]:
    """
    Partitions of a list of items into groups, optionally with an exact
    number of groups. Groups keep the input order of their items.
    """
    items = list(items)
    if not items:
        if blocks in (None, 0):
            yield []
        return
    if blocks is not None and not 1 <= blocks <= len(items):
        return
    first, rest = items[0], items[1:]
    for tail in group_partitions(rest, None):
        if blocks is not None and len(tail) not in (blocks, blocks - 1):
            continue
        if blocks is None or len(tail) == blocks - 1:
            yield [(first,)] + tail
        if blocks is None or len(tail) == blocks:
            for k in range(len(tail)):
                yield tail[:k] + [(first,) + tail[k]] + tail[k + 1:]


def partitions_between(lower: SetPartition, upper: SetPartition) -> Iterator[SetPartition]:
    """The interval [lower, upper] of the partition lattice."""
    if not lower.leq(upper):
        raise PreconditionError(f'{lower} is not finer than {upper}')
    per_upper_block = []
    for block in upper.blocks:
        inside = [b for b in lower.blocks if b[0] in block]
        per_upper_block.append(list(group_partitions(inside)))

    def expand(k, chosen):
        if k == len(per_upper_block):
            yield SetPartition([sum(group, ()) for groups in chosen for group in groups], lower.n)
            return
        for groups in per_upper_block[k]:
            yield from expand(k + 1, chosen + [groups])

    yield from expand(0, [])


def moebius_partition(lower: SetPartition, upper: SetPartition) -> Fraction:
    """Möbius function of the partition lattice on [lower, upper]."""
    lower._check_size(upper)
    if not lower.leq(upper):
        raise PreconditionError(f'{lower} is not finer than {upper}')
    value = 1
    for block in upper.blocks:
        m = sum(1 for b in lower.blocks if b[0] in block)
        value *= (-1) ** (m - 1) * factorial(m - 1)
    return Fraction(value)


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]

"""
Higher-order probability spaces.

A MomentOracle knows phi(1_n, pi)[a_1, ..., a_n], the classical cumulant
of the traces read along the cycles of pi. Word positions hold monomials
(tuples of letters); the letter ``'1'`` is the unit. Free cumulants are
the decorated convolution kappa = phi * mu, and freeness of all orders is
the vanishing of mixed cumulants.
"""
import itertools
import logging
from collections import namedtuple
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence, Tuple

from hofree.estimate import Estimate
from hofree.exceptions import MissingValueError, PreconditionError, SizeMismatchError
from hofree.multfn import MultFn, convolve, diagrams_of, moebius_recursion, moebius_table
from hofree.partition import SetPartition
from hofree.permutation import Permutation, gamma_of_profile
from hofree.ps import DEFAULT_ENUM_BOUND, PartitionedPermutation, check_bound, factorizations2
from hofree.typing import Monomial

logger = logging.getLogger(__name__)

UNIT = '1'

MixedCumulant = namedtuple('MixedCumulant', 'diagram word value')
MixedCumulantReport = namedtuple('MixedCumulantReport', 'entries max_abs max_z')


def as_monomial(element) -> Monomial:
    """``'a'``, ``('a', 'b')`` or ``'1'`` as a unit-free tuple of letters."""
    if isinstance(element, str):
        element = (element,)
    return tuple(letter for letter in element if letter != UNIT)


def min_rotation(seq: tuple) -> tuple:
    if not seq:
        return seq
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def _flatten(elements: Iterable[Monomial]) -> Monomial:
    return tuple(letter for m in elements for letter in m)


def _check_word(word, n: int) -> List[Monomial]:
    word = [as_monomial(m) for m in word]
    if len(word) != n:
        raise SizeMismatchError(f'word of length {len(word)} on {n} points')
    return word


def _full(perm: Permutation) -> PartitionedPermutation:
    return PartitionedPermutation(SetPartition.full(perm.n), perm)


class MomentOracle:
    """
    Tracial moment data of a higher-order probability space.

    Values are cached under a canonical key: units stripped, each trace in
    its least rotation, traces sorted. The unit axioms phi_1(1) = 1 and
    phi_r(1, ...) = 0 for r >= 2 are applied before any lookup.
    """

    exact = True

    def __init__(self, alphabet: Iterable[str], name: str = None):
        self.alphabet = frozenset(alphabet) | {UNIT}
        self.name = name or type(self).__name__
        self.moment_cache = {}
        self.cumulant_cache = {}

    def _moment(self, traces: Tuple[Monomial, ...]):
        raise NotImplementedError

    def check_letters(self, letters: Iterable[str]):
        unknown = set(letters) - self.alphabet
        if unknown:
            raise PreconditionError(f'letters {sorted(unknown)} are not in the alphabet of {self.name}')

    def moment(self, traces: Sequence[Sequence[str]]):
        """phi_r(Tr w_1, ..., Tr w_r) for words given as letter sequences."""
        words = []
        for trace in traces:
            trace = as_monomial(tuple(trace))
            self.check_letters(trace)
            words.append(min_rotation(trace))
        if not words:
            return Fraction(1)
        if not all(words):
            return Fraction(int(len(words) == 1))
        key = tuple(sorted(words))
        if key not in self.moment_cache:
            self.moment_cache[key] = self._moment(key)
        return self.moment_cache[key]

    def phi(self, perm: Permutation, word: Sequence):
        """phi(1_n, pi)[word]"""
        word = _check_word(word, perm.n)
        return self.moment([_flatten(word[i - 1] for i in cycle) for cycle in perm.cycles()])

    def evaluate(self, a: PartitionedPermutation, word: Sequence):
        """phi(V, pi)[word], the product over the blocks of V."""
        word = _check_word(word, a.n)
        traces = {}
        for cycle in a.perm.cycles():
            traces.setdefault(a.partition.block_of(cycle[0]), []).append(_flatten(word[i - 1] for i in cycle))
        value = Fraction(1)
        for block_traces in traces.values():
            value = value * self.moment(block_traces)
        return value

    def cumulant(self, target, word: Sequence):
        return decorated_cumulant(self, target, word)

    def __repr__(self):
        return f'{type(self).__name__}<{self.name}, alphabet={sorted(self.alphabet)}>'


class UnitOracle(MomentOracle):
    """The scalars: only the unit letter."""

    def __init__(self):
        super().__init__((), 'unit')

    def _moment(self, traces):
        raise MissingValueError(f'unit oracle has no moment {traces}')


class DistributionOracle(MomentOracle):
    """One letter whose moments phi_r(a^k1, ..., a^kr) are read off a diagram table."""

    def __init__(self, letter: str, distribution: MultFn, name: str = None):
        if letter == UNIT:
            raise PreconditionError('the unit letter cannot carry a distribution')
        super().__init__((letter,), name or distribution.name or letter)
        self.letter = letter
        self.distribution = distribution
        self.exact = not any(isinstance(v, Estimate) for v in distribution.table.values())

    def _moment(self, traces):
        return self.distribution[tuple(len(w) for w in traces)]


class FunctionOracle(MomentOracle):
    """Moments from a callable on canonical keys (tuples of least-rotated traces)."""

    def __init__(self, alphabet: Iterable[str], fn: Callable[[Tuple[Monomial, ...]], object],
                 exact: bool = True, name: str = None):
        super().__init__(alphabet, name)
        self._fn = fn
        self.exact = exact

    def _moment(self, traces):
        return self._fn(traces)


def unit_oracle() -> UnitOracle:
    return UnitOracle()


def distribution_oracle(letter: str, distribution: MultFn) -> DistributionOracle:
    return DistributionOracle(letter, distribution)


def decorated_cumulant(oracle: MomentOracle, target, word: Sequence, bound: int = DEFAULT_ENUM_BOUND):
    """
    kappa(U, gamma)[word] as the sum of phi(V, pi)[word] mu(W, sigma) over
    (V, pi) * (W, sigma) = (U, gamma), evaluated blockwise on U.
    """
    if isinstance(target, Permutation):
        target = _full(target)
    word = _check_word(word, target.n)
    value = Fraction(1)
    for block in target.partition.blocks:
        value = value * _block_cumulant(oracle, target.perm.restrict(block), [word[i - 1] for i in block], bound)
    return value


def _block_cumulant(oracle: MomentOracle, perm: Permutation, word: List[Monomial], bound: int):
    cycles = tuple(sorted(min_rotation(tuple(word[i - 1] for i in cycle)) for cycle in perm.cycles()))
    if cycles not in oracle.cumulant_cache:
        gamma = gamma_of_profile([len(c) for c in cycles])
        flat = [m for c in cycles for m in c]
        total = Fraction(0)
        for a, b in factorizations2(_full(gamma), bound):
            total = total + oracle.evaluate(a, flat) * moebius_recursion(b)
        oracle.cumulant_cache[cycles] = total
    return oracle.cumulant_cache[cycles]


class FreeJoinOracle(MomentOracle):
    """
    Two algebras free of all orders.

    Each trace is cut into alternating runs a_1 b_1 ... a_n b_n, a missing
    run standing for the unit, and evaluated as the sum of
    kappa^A(V, pi)[a] phi^B(W, sigma)[b] over (V, pi) * (W, sigma) = (1_n, gamma).
    """

    def __init__(self, first: MomentOracle, second: MomentOracle, name: str = None,
                 bound: int = DEFAULT_ENUM_BOUND):
        shared = (first.alphabet & second.alphabet) - {UNIT}
        if shared:
            raise PreconditionError(f'free join needs disjoint alphabets, both contain {sorted(shared)}')
        super().__init__(first.alphabet | second.alphabet, name or f'{first.name}*{second.name}')
        self.first = first
        self.second = second
        self.exact = first.exact and second.exact
        self.bound = bound

    def runs(self, trace: Monomial) -> List[Tuple[Monomial, Monomial]]:
        in_first = [letter in self.first.alphabet for letter in trace]
        if all(in_first):
            return [(trace, ())]
        if not any(in_first):
            return [((), trace)]
        start = next(k for k in range(len(trace)) if in_first[k] and not in_first[k - 1])
        trace = trace[start:] + trace[:start]
        pairs = []
        for side, group in itertools.groupby(trace, key=lambda letter: letter in self.first.alphabet):
            if side:
                pairs.append([tuple(group), ()])
            else:
                pairs[-1][1] = tuple(group)
        return [tuple(pair) for pair in pairs]

    def _moment(self, traces):
        cycles = [self.runs(trace) for trace in traces]
        gamma = gamma_of_profile([len(c) for c in cycles])
        pairs = [pair for c in cycles for pair in c]
        a_word = [pair[0] for pair in pairs]
        b_word = [pair[1] for pair in pairs]
        total = Fraction(0)
        for a, b in factorizations2(_full(gamma), self.bound):
            moment = self.second.evaluate(b, b_word)
            if isinstance(moment, Fraction) and not moment:
                continue
            total = total + decorated_cumulant(self.first, a, a_word, self.bound) * moment
        return total


def free_join(first: MomentOracle, second: MomentOracle) -> FreeJoinOracle:
    return FreeJoinOracle(first, second)


def mixed_cumulant_report(oracle: MomentOracle, groups: Sequence[Iterable[str]], up_to: int,
                          bound: int = DEFAULT_ENUM_BOUND) -> MixedCumulantReport:
    """
    kappa(1_n, gamma_lambda)[word] for every word whose letters come from at
    least two groups, one per conjugacy and rotation class, n <= up_to.
    """
    groups = [frozenset(g) - {UNIT} for g in groups]
    if len(groups) < 2:
        return MixedCumulantReport([], Fraction(0), 0.0)
    letters = sorted(set().union(*groups))
    if sum(len(g) for g in groups) != len(letters):
        raise PreconditionError('letter groups must be disjoint')
    oracle.check_letters(letters)
    check_bound(up_to, bound)
    group_of = {letter: k for k, g in enumerate(groups) for letter in g}

    entries, seen = [], set()
    for n in range(2, up_to + 1):
        for diagram in diagrams_of(n):
            gamma = gamma_of_profile(diagram)
            for word in itertools.product(letters, repeat=n):
                if len({group_of[letter] for letter in word}) < 2:
                    continue
                key = tuple(sorted(min_rotation(tuple(word[i - 1] for i in c)) for c in gamma.cycles()))
                if key in seen:
                    continue
                seen.add(key)
                entries.append(MixedCumulant(diagram, word, decorated_cumulant(oracle, gamma, word, bound)))

    max_abs = max((abs(float(e.value)) if isinstance(e.value, Estimate) else abs(e.value) for e in entries),
                  default=Fraction(0))
    max_z = max((abs(e.value.z_score(0)) for e in entries if isinstance(e.value, Estimate)), default=0.0)
    logger.debug('%d mixed cumulants of %s up to order %d', len(entries), oracle.name, up_to)
    return MixedCumulantReport(entries, max_abs, max_z)


def cumulants_from_moments(distribution: MultFn, up_to: int = None, bound: int = DEFAULT_ENUM_BOUND) -> MultFn:
    """kappa = phi * mu"""
    up_to = distribution.order_bound if up_to is None else up_to
    result = convolve(distribution, moebius_table(up_to, bound), up_to, bound)
    result.name = 'cumulants'
    return result


def moments_from_cumulants(cumulants: MultFn, up_to: int = None, bound: int = DEFAULT_ENUM_BOUND) -> MultFn:
    """phi = kappa * zeta"""
    up_to = cumulants.order_bound if up_to is None else up_to
    result = convolve(cumulants, MultFn.zeta(up_to), up_to, bound)
    result.name = 'moments'
    return result


def add_free(ka: MultFn, kb: MultFn) -> MultFn:
    """Cumulants of a + b for a, b free of all orders."""
    if ka.order_bound != kb.order_bound:
        raise PreconditionError(f'cumulant tables of orders {ka.order_bound} and {kb.order_bound}')
    result = ka + kb
    result.name = 'cumulants'
    return result


def alternating_powers(first: str, second: str, n: Sequence[int], m: Sequence[int]) -> List[Tuple[str, int]]:
    """[(first, n(1)), (second, m(1)), ..., (first, n(p)), (second, m(p))]"""
    if len(n) != len(m):
        raise SizeMismatchError(f'{len(n)} powers of {first} against {len(m)} of {second}')
    return [pair for k, l in zip(n, m) for pair in ((first, k), (second, l))]


def centered_terms(oracle: MomentOracle, powers: Sequence[Tuple[str, int]]) -> List[Tuple[object, Monomial]]:
    """prod (x^k - phi_1(x^k) 1) expanded into (coefficient, monomial) terms."""
    terms = [(Fraction(1), ())]
    for letter, power in powers:
        if power < 1:
            raise PreconditionError(f'powers must be positive, got {letter}^{power}')
        monomial = (letter,) * power
        mean = oracle.moment([monomial])
        terms = [term for c, m in terms for term in ((c, m + monomial), (-(c * mean), m))]
    return terms


def centered_word_covariance(oracle: MomentOracle, first: Sequence[Tuple[str, int]],
                             second: Sequence[Tuple[str, int]]):
    """phi_2 of two products of centered powers, expanded multilinearly."""
    total = Fraction(0)
    for c1, w1 in centered_terms(oracle, first):
        for c2, w2 in centered_terms(oracle, second):
            total = total + c1 * c2 * oracle.moment([w1, w2])
    return total


def free_covariance_prediction(alpha_a: Callable[[int], object], alpha_b: Callable[[int], object],
                               n: Sequence[int], m: Sequence[int],
                               n_tilde: Sequence[int], m_tilde: Sequence[int]):
    """
    phi_2(Y(n, m), Y~) for A, B free of second order, where Y(n, m) is the
    trace of the alternating centered product and Y~ runs through
    (n_tilde(p), m_tilde(p)), ..., (n_tilde(1), m_tilde(1)). Only first-order
    moments enter; indices are taken modulo p.
    """
    p, q = len(n), len(n_tilde)
    if len(m) != p or len(m_tilde) != q:
        raise SizeMismatchError('every power of A needs a matching power of B')
    if p != q:
        return Fraction(0)

    def cov(alpha, x, y):
        return alpha(x + y) - alpha(x) * alpha(y)

    total = Fraction(0)
    for k in range(1, p + 1):
        term = Fraction(1)
        for i in range(1, p + 1):
            term = term * cov(alpha_a, n[(i + k - 1) % p], n_tilde[i - 1])
            term = term * cov(alpha_b, m[(i + k - 1) % p], m_tilde[i % p])
        total = total + term
    return total

"""
Random matrix ensembles and their predicted limit distributions.

Sample i of stream s always comes from
``default_rng(SeedSequence([seed, s, i]))``, so a sample does not depend on
which thread draws it or in what order.
"""
import logging
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from hofree.exceptions import ParseError, SimulationError
from hofree.series import Series1, Series2
from hofree.transforms import c2m_first, c2m_second, free_poisson, m2c_first, m2c_second, semicircle
from hofree.utils import to_fraction

logger = logging.getLogger(__name__)


def sample_rng(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, stream, index]))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Entries with E|z|^2 = 1 and independent real and imaginary parts."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_unitary(N: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a complex Ginibre matrix with the phases of R's diagonal moved into Q."""
    q, r = np.linalg.qr(complex_gaussian(rng, (N, N)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))[np.newaxis, :]


class Ensemble:
    """A family of N x N matrices with a known limit distribution."""

    kind = None
    unitarily_invariant = False
    random = True

    def __init__(self, N: int):
        if int(N) != N or N < 1:
            raise SimulationError(f'matrix size must be a positive integer, got {N}')
        self.N = int(N)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def cumulant_series(self, trunc: int) -> Tuple[Series1, Series2]:
        """First- and second-order cumulant series of the limit distribution."""
        M, M2 = self.moment_series(trunc)
        return m2c_first(M), m2c_second(M, M2)

    def moment_series(self, trunc: int) -> Tuple[Series1, Series2]:
        C, C2 = self.cumulant_series(trunc)
        return c2m_first(C), c2m_second(C, C2)

    def resized(self, N: int) -> 'Ensemble':
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def __repr__(self):
        return f'{type(self).__name__}<{self.describe()}, N={self.N}>'


class GUE(Ensemble):
    """Hermitian, E|a_ij|^2 = 1/N, so that E tr(A^2) = 1."""

    kind = 'gue'
    unitarily_invariant = True

    def sample(self, rng):
        x = complex_gaussian(rng, (self.N, self.N))
        return (x + x.conj().T) / np.sqrt(2 * self.N)

    def cumulant_series(self, trunc):
        return semicircle(trunc), Series2({}, trunc)

    def resized(self, N):
        return GUE(N)


class Wishart(Ensemble):
    """A = X X* / N with X of size N x round(cN)."""

    kind = 'wishart'
    unitarily_invariant = True

    def __init__(self, N: int, ratio=1):
        super().__init__(N)
        self.ratio = to_fraction(ratio)
        if self.ratio <= 0:
            raise SimulationError(f'Wishart ratio must be positive, got {self.ratio}')
        self.columns = round(self.ratio * self.N)
        if self.columns < 1:
            raise SimulationError(f'Wishart ratio {self.ratio} leaves no columns at N={self.N}')

    def sample(self, rng):
        x = complex_gaussian(rng, (self.N, self.columns))
        return x @ x.conj().T / self.N

    def cumulant_series(self, trunc):
        return free_poisson(self.ratio, trunc), Series2({}, trunc)

    def resized(self, N):
        return Wishart(N, self.ratio)

    def describe(self):
        return f'wishart:{self.ratio}'


class DeterministicDiagonal(Ensemble):
    """diag(v_1, v_2, ..., v_k, v_1, ...) of size N; no randomness."""

    kind = 'diag'
    random = False

    def __init__(self, N: int, values: Sequence):
        super().__init__(N)
        if not values:
            raise SimulationError('a deterministic diagonal needs at least one value')
        self.values = tuple(to_fraction(v) for v in values)
        self.diagonal = tuple(self.values[i % len(self.values)] for i in range(self.N))
        self._matrix = np.diag(np.array([float(v) for v in self.diagonal], dtype=complex))

    def sample(self, rng):
        return self._matrix

    def moment(self, k: int) -> Fraction:
        """tr(D^k), exact at this N."""
        return sum((v ** k for v in self.diagonal), Fraction(0)) / self.N

    def moment_series(self, trunc):
        return Series1([self.moment(k) for k in range(trunc + 1)], trunc), Series2({}, trunc)

    def resized(self, N):
        return DeterministicDiagonal(N, self.values)

    def describe(self):
        return 'diag:' + ','.join(str(v) for v in self.values)


class HaarConjugate(Ensemble):
    """U A U* with U Haar-distributed and independent of A."""

    kind = 'haar'
    unitarily_invariant = True

    def __init__(self, inner: Ensemble):
        super().__init__(inner.N)
        self.inner = inner

    def sample(self, rng):
        u = haar_unitary(self.N, rng)
        return u @ self.inner.sample(rng) @ u.conj().T

    def moment_series(self, trunc):
        return self.inner.moment_series(trunc)

    def cumulant_series(self, trunc):
        return self.inner.cumulant_series(trunc)

    def resized(self, N):
        return HaarConjugate(self.inner.resized(N))

    def describe(self):
        return 'haar:' + self.inner.describe()


def parse_ensemble(text: str, N: int) -> Ensemble:
    """``gue``, ``wishart:2``, ``diag:1,-1`` or ``haar:<ensemble>``."""
    kind, _, rest = text.strip().partition(':')
    kind = kind.lower()
    try:
        if kind == 'gue' and not rest:
            return GUE(N)
        if kind == 'wishart':
            return Wishart(N, rest or 1)
        if kind == 'diag' and rest:
            return DeterministicDiagonal(N, [v for v in rest.split(',') if v])
        if kind == 'haar' and rest:
            return HaarConjugate(parse_ensemble(rest, N))
    except ParseError as e:
        raise ParseError(f'invalid ensemble {text!r}: {e}') from e
    raise ParseError(f'invalid ensemble {text!r}')

"""
Truncated formal power series over exact rationals.

``Series1`` is univariate and exact through degree ``trunc``; ``Series2``
is bivariate and exact through total degree ``trunc``. Every operation
returns the largest truncation its inputs justify, so results never
carry coefficients that are not exactly known.
"""
import logging
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from hofree.exceptions import ParseError, PreconditionError
from hofree.utils import fraction_str, to_fraction

logger = logging.getLogger(__name__)

DEFAULT_TRUNC = 12

_KEY_RE = re.compile(r'^\((\d+)(?:,(\d+))?\)$')


class Series1:
    __slots__ = ('trunc', 'coeffs')

    def __init__(self, coeffs: Iterable, trunc: int = None):
        coeffs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise PreconditionError(f'negative truncation {trunc}')
        coeffs = coeffs[:trunc + 1]
        self.coeffs = tuple(coeffs + [Fraction(0)] * (trunc + 1 - len(coeffs)))
        self.trunc = trunc

    @classmethod
    def constant(cls, value, trunc: int) -> 'Series1':
        return cls([value], trunc)

    @classmethod
    def x(cls, trunc: int) -> 'Series1':
        return cls([0, 1], trunc)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.trunc:
            raise PreconditionError(f'coefficient {k} is beyond the truncation {self.trunc}')
        return self.coeffs[k]

    def truncate(self, trunc: int) -> 'Series1':
        return Series1(self.coeffs, min(trunc, self.trunc))

    def __add__(self, other) -> 'Series1':
        if not isinstance(other, Series1):
            other = Series1.constant(other, self.trunc)
        trunc = min(self.trunc, other.trunc)
        return Series1([self.coeffs[k] + other.coeffs[k] for k in range(trunc + 1)], trunc)

    __radd__ = __add__

    def __neg__(self) -> 'Series1':
        return Series1([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other) -> 'Series1':
        return self + (-other)

    def __rsub__(self, other) -> 'Series1':
        return (-self) + other

    def __mul__(self, other) -> 'Series1':
        if not isinstance(other, Series1):
            return Series1([c * other for c in self.coeffs], self.trunc)
        trunc = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        return Series1([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(trunc + 1)], trunc)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> 'Series1':
        result = Series1.constant(1, self.trunc)
        for _ in range(power):
            result = result * self
        return result

    def shift(self, k: int) -> 'Series1':
        """Multiply by x^k."""
        return Series1([0] * k + list(self.coeffs), self.trunc + k)

    def reciprocal(self) -> 'Series1':
        head = self.coeffs[0]
        if head == 0:
            raise PreconditionError('reciprocal needs a nonzero constant term, coefficient 0 is 0')
        inverse = [1 / head]
        for k in range(1, self.trunc + 1):
            inverse.append(-sum(self.coeffs[i] * inverse[k - i] for i in range(1, k + 1)) / head)
        return Series1(inverse, self.trunc)

    def __truediv__(self, other) -> 'Series1':
        if not isinstance(other, Series1):
            return self * (1 / Fraction(other))
        return self * other.reciprocal()

    def log(self) -> 'Series1':
        if self.coeffs[0] != 1:
            raise PreconditionError(f'log needs constant term 1, coefficient 0 is {self.coeffs[0]}')
        u = self - 1
        result, power = Series1.constant(0, self.trunc), Series1.constant(1, self.trunc)
        for k in range(1, self.trunc + 1):
            power = power * u
            result = result + power * Fraction((-1) ** (k + 1), k)
        return result

    def derivative(self) -> 'Series1':
        if self.trunc == 0:
            raise PreconditionError('derivative of a series known only at degree 0')
        return Series1([k * self.coeffs[k] for k in range(1, self.trunc + 1)], self.trunc - 1)

    def compose(self, inner: 'Series1') -> 'Series1':
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise PreconditionError(f'inner series has constant term {inner.coeffs[0]}')
        trunc = min(self.trunc, inner.trunc)
        inner = inner.truncate(trunc)
        result = Series1.constant(0, trunc)
        power = Series1.constant(1, trunc)
        for k in range(trunc + 1):
            if self.coeffs[k]:
                result = result + power * self.coeffs[k]
            power = power * inner
        return result

    def evaluate(self, x) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def __eq__(self, other):
        return isinstance(other, Series1) and self.trunc == other.trunc and self.coeffs == other.coeffs

    def to_dict(self) -> dict:
        return {'trunc': self.trunc,
                'coeffs': {f'({k})': fraction_str(c) for k, c in enumerate(self.coeffs) if c}}

    @classmethod
    def from_dict(cls, data: Mapping) -> 'Series1':
        try:
            trunc = int(data['trunc'])
            coeffs = [0] * (trunc + 1)
            for key, value in data['coeffs'].items():
                k, second = _parse_key(key)
                if second is not None:
                    raise ParseError(f'bivariate key {key!r} in a univariate series')
                coeffs[k] = to_fraction(value)
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise ParseError(f'malformed series: {e}') from e
        return cls(coeffs, trunc)

    def __repr__(self):
        terms = ' + '.join(f'{c}*x^{k}' for k, c in enumerate(self.coeffs) if c) or '0'
        return f'Series1<{terms} + O(x^{self.trunc + 1})>'


class Series2:
    __slots__ = ('trunc', 'coeffs')

    def __init__(self, coeffs: Mapping[Tuple[int, int], object] = None, trunc: int = DEFAULT_TRUNC):
        if trunc < 0:
            raise PreconditionError(f'negative truncation {trunc}')
        self.trunc = trunc
        self.coeffs: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise PreconditionError(f'negative exponent ({i}, {j})')
            c = Fraction(c)
            if c and i + j <= trunc:
                self.coeffs[(i, j)] = c

    @classmethod
    def constant(cls, value, trunc: int) -> 'Series2':
        return cls({(0, 0): value}, trunc)

    @classmethod
    def outer(cls, f: Series1, g: Series1) -> 'Series2':
        """f(x) g(y)"""
        trunc = min(f.trunc, g.trunc)
        return cls({(i, j): f.coeffs[i] * g.coeffs[j]
                    for i in range(trunc + 1) for j in range(trunc + 1 - i)}, trunc)

    @classmethod
    def in_x(cls, f: Series1) -> 'Series2':
        return cls({(i, 0): c for i, c in enumerate(f.coeffs)}, f.trunc)

    @classmethod
    def in_y(cls, f: Series1) -> 'Series2':
        return cls({(0, j): c for j, c in enumerate(f.coeffs)}, f.trunc)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if i + j > self.trunc:
            raise PreconditionError(f'coefficient ({i}, {j}) is beyond the truncation {self.trunc}')
        return self.coeffs.get((i, j), Fraction(0))

    def truncate(self, trunc: int) -> 'Series2':
        return Series2(self.coeffs, min(trunc, self.trunc))

    def __add__(self, other) -> 'Series2':
        if not isinstance(other, Series2):
            other = Series2.constant(other, self.trunc)
        result = dict(self.coeffs)
        for key, c in other.coeffs.items():
            result[key] = result.get(key, 0) + c
        return Series2(result, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self) -> 'Series2':
        return Series2({k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other) -> 'Series2':
        return self + (-other)

    def __rsub__(self, other) -> 'Series2':
        return (-self) + other

    def __mul__(self, other) -> 'Series2':
        if not isinstance(other, Series2):
            return Series2({k: c * other for k, c in self.coeffs.items()}, self.trunc)
        trunc = min(self.trunc, other.trunc)
        result = {}
        for (i, j), a in self.coeffs.items():
            if i + j > trunc:
                continue
            for (k, l), b in other.coeffs.items():
                if i + j + k + l <= trunc:
                    key = (i + k, j + l)
                    result[key] = result.get(key, 0) + a * b
        return Series2(result, trunc)

    __rmul__ = __mul__

    def shift(self, a: int, b: int) -> 'Series2':
        """Multiply by x^a y^b."""
        return Series2({(i + a, j + b): c for (i, j), c in self.coeffs.items()}, self.trunc + a + b)

    def divide_by_monomial(self, a: int, b: int) -> 'Series2':
        for (i, j), c in self.coeffs.items():
            if i < a or j < b:
                raise PreconditionError(f'coefficient ({i}, {j}) = {c} is not divisible by x^{a} y^{b}')
        return Series2({(i - a, j - b): c for (i, j), c in self.coeffs.items()}, self.trunc - a - b)

    def reciprocal(self) -> 'Series2':
        head = self.coeffs.get((0, 0), Fraction(0))
        if head == 0:
            raise PreconditionError('reciprocal needs a nonzero constant term, coefficient (0, 0) is 0')
        u = self * (1 / head) - 1
        result, power = Series2.constant(1, self.trunc), Series2.constant(1, self.trunc)
        for _ in range(self.trunc):
            power = power * (-u)
            result = result + power
        return result * (1 / head)

    def __truediv__(self, other) -> 'Series2':
        if not isinstance(other, Series2):
            return self * (1 / Fraction(other))
        return self * other.reciprocal()

    def log(self) -> 'Series2':
        head = self.coeffs.get((0, 0), Fraction(0))
        if head != 1:
            raise PreconditionError(f'log needs constant term 1, coefficient (0, 0) is {head}')
        u = self - 1
        result, power = Series2(trunc=self.trunc), Series2.constant(1, self.trunc)
        for k in range(1, self.trunc + 1):
            power = power * u
            result = result + power * Fraction((-1) ** (k + 1), k)
        return result

    def dx(self) -> 'Series2':
        if self.trunc == 0:
            raise PreconditionError('derivative of a series known only at degree 0')
        return Series2({(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i}, self.trunc - 1)

    def dy(self) -> 'Series2':
        if self.trunc == 0:
            raise PreconditionError('derivative of a series known only at degree 0')
        return Series2({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j}, self.trunc - 1)

    def diagonal_sums(self) -> Dict[int, Fraction]:
        sums = {k: Fraction(0) for k in range(self.trunc + 1)}
        for (i, j), c in self.coeffs.items():
            sums[i + j] += c
        return sums

    def divide_by_x_minus_y(self) -> 'Series2':
        """q with (x - y) q == self; self must vanish on the diagonal x = y."""
        for k, total in self.diagonal_sums().items():
            if total:
                raise PreconditionError(f'series does not vanish on x = y: degree {k} sums to {total}')
        quotient = {}
        for k in range(1, self.trunc + 1):
            previous = -self[(0, k)]
            quotient[(0, k - 1)] = previous
            for i in range(1, k):
                previous = previous - self[(i, k - i)]
                quotient[(i, k - 1 - i)] = previous
        q = Series2(quotient, self.trunc - 1)
        check = q.shift(1, 0) - q.shift(0, 1)
        if (check - self.truncate(check.trunc)).coeffs:
            raise ArithmeticError('division by x - y does not multiply back')
        return q

    def substitute(self, a: Series1, b: Series1) -> 'Series2':
        """self(a(x), b(y)); both inner series must have zero constant term."""
        if a.coeffs[0] or b.coeffs[0]:
            raise PreconditionError('substituted series must have zero constant term')
        trunc = min(self.trunc, a.trunc, b.trunc)
        logger.debug('substituting into a bivariate series of %d terms through degree %d', len(self.coeffs), trunc)
        powers_a, powers_b = [Series1.constant(1, trunc)], [Series1.constant(1, trunc)]
        for _ in range(trunc):
            powers_a.append(powers_a[-1] * a.truncate(trunc))
            powers_b.append(powers_b[-1] * b.truncate(trunc))
        result = {}
        for (i, j), c in self.coeffs.items():
            if i + j > trunc:
                continue
            pa, pb = powers_a[i].coeffs, powers_b[j].coeffs
            for p in range(i, trunc + 1):
                if not pa[p]:
                    continue
                for q in range(j, trunc + 1 - p):
                    if pb[q]:
                        result[(p, q)] = result.get((p, q), 0) + c * pa[p] * pb[q]
        return Series2(result, trunc)

    def evaluate(self, x, y) -> Fraction:
        return sum((c * Fraction(x) ** i * Fraction(y) ** j for (i, j), c in self.coeffs.items()), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Series2) and self.trunc == other.trunc and self.coeffs == other.coeffs

    def to_dict(self) -> dict:
        return {'trunc': self.trunc,
                'coeffs': {f'({i},{j})': fraction_str(c) for (i, j), c in sorted(self.coeffs.items())}}

    @classmethod
    def from_dict(cls, data: Mapping) -> 'Series2':
        try:
            coeffs = {}
            for key, value in data['coeffs'].items():
                i, j = _parse_key(key)
                if j is None:
                    raise ParseError(f'univariate key {key!r} in a bivariate series')
                coeffs[(i, j)] = to_fraction(value)
            return cls(coeffs, int(data['trunc']))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f'malformed series: {e}') from e

    def __repr__(self):
        terms = ' + '.join(f'{c}*x^{i}y^{j}' for (i, j), c in sorted(self.coeffs.items())) or '0'
        return f'Series2<{terms} + O({self.trunc + 1})>'


AnySeries = Union[Series1, Series2]


def _parse_key(key: str):
    match = _KEY_RE.match(key.replace(' ', ''))
    if not match:
        raise ParseError(f'invalid coefficient key {key!r}')
    first, second = match.groups()
    return int(first), (int(second) if second is not None else None)

import math
from fractions import Fraction
from numbers import Number

import numpy as np


def as_float(value) -> float:
    if isinstance(value, Fraction):
        return value.numerator / value.denominator
    return float(value)


class Estimate:
    """
    A sampled quantity together with its batch replicas.

    ``value`` comes from the full sample, ``replicas`` from disjoint
    batches; arithmetic acts on both, so errors of derived quantities are
    read off the transformed replicas.
    """

    __slots__ = ('value', 'replicas')

    def __init__(self, value, replicas):
        self.value = float(value)
        self.replicas = np.asarray(replicas, dtype=float)

    @property
    def batches(self) -> int:
        return len(self.replicas)

    @property
    def std_err(self) -> float:
        if self.batches < 2:
            return math.nan
        return float(np.std(self.replicas, ddof=1) / math.sqrt(self.batches))

    def z_score(self, prediction, atol: float = 1e-12) -> float:
        diff = self.value - as_float(prediction)
        se = self.std_err
        if not se > atol:
            return 0.0 if abs(diff) <= atol else math.inf
        return diff / se

    def _binary(self, other, op):
        if isinstance(other, Estimate):
            return Estimate(op(self.value, other.value), op(self.replicas, other.replicas))
        if isinstance(other, (Number, np.number)):
            other = as_float(other)
            return Estimate(op(self.value, other), op(self.replicas, other))
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: b * a)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __neg__(self):
        return Estimate(-self.value, -self.replicas)

    def __abs__(self):
        return Estimate(abs(self.value), np.abs(self.replicas))

    def __float__(self):
        return self.value

    def __repr__(self):
        return f'Estimate<{self.value:.6g} ± {self.std_err:.2g}>'

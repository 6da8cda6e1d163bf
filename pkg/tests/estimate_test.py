import math
from fractions import Fraction

import numpy as np

from hofree.estimate import Estimate, as_float


def test_as_float():
    assert as_float(Fraction(1, 4)) == 0.25
    assert as_float(3) == 3.0


def test_std_err_from_replicas():
    e = Estimate(1.0, [0.0, 2.0, 1.0, 1.0])
    assert e.batches == 4
    assert math.isclose(e.std_err, np.std([0.0, 2.0, 1.0, 1.0], ddof=1) / 2)
    assert math.isnan(Estimate(1.0, [1.0]).std_err)


def test_z_score():
    e = Estimate(1.0, [0.0, 2.0, 1.0, 1.0])
    assert math.isclose(e.z_score(Fraction(1, 2)), 0.5 / e.std_err)
    exact = Estimate(2.0, [2.0, 2.0])
    assert exact.z_score(2) == 0.0
    assert exact.z_score(3) == math.inf


def test_arithmetic_acts_on_replicas():
    a = Estimate(1.0, [1.0, 3.0])
    b = Estimate(2.0, [2.0, 2.0])
    total = a + b
    assert total.value == 3.0
    assert list(total.replicas) == [3.0, 5.0]
    assert list((2 * a).replicas) == [2.0, 6.0]
    assert list((1 - a).replicas) == [0.0, -2.0]
    assert (a * Fraction(1, 2)).value == 0.5
    assert abs(-a).value == 1.0
    assert float(a / 2) == 0.5

# pylint: disable=redefined-outer-name
from fractions import Fraction

import pytest

import hofree
from hofree.rmt import SampleConfig


def fractions(*values):
    return [Fraction(v) for v in values]


@pytest.fixture(scope='function')
def config():
    return hofree.Config(threads=2, seed=7, samples=2000, batches=20)


@pytest.fixture(scope='function')
def calc(config):
    return hofree.Calculator(config)


@pytest.fixture(scope='function')
def sample_config():
    return SampleConfig(samples=2000, seed=11, threads=2, batches=20)

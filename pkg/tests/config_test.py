from argparse import Namespace

import pytest

from hofree.config import Config, default_threads, to_bool
from hofree.exceptions import ParseError
from hofree.rmt import SampleConfig


def test_defaults():
    config = Config()
    assert config.seed == 20061101
    assert config.enum_bound == 8
    assert config.trunc == 12
    assert config.tolerance == 3.0
    assert config.allow_large is False
    assert 1 <= config.threads == default_threads() <= 8


@pytest.mark.parametrize('value,expected', [
    ('0', False), ('no', False), ('Off', False), ('1', True), ('yes', True), ('', None), (None, None),
])
def test_to_bool(value, expected):
    assert to_bool(value) is expected


def test_from_env():
    config = Config.from_env({'HOFC_THREADS': '3', 'HOFC_SEED': '42', 'HOFC_ALLOW_LARGE': 'yes',
                              'UNRELATED': 'x'})
    assert config.threads == 3
    assert config.seed == 42
    assert config.allow_large is True


def test_overrides_win_over_env():
    config = Config.from_env({'HOFC_SEED': '42', 'HOFC_TRUNC': '6'}, seed='5')
    assert config.seed == 5
    assert config.trunc == 6


def test_from_args():
    namespace = Namespace(threads='2', seed=None, enum_bound='6', allow_large=False, trunc=None, tolerance='4.5',
                          samples=None, batches=None, command='count')
    config = Config.from_args(namespace, {'HOFC_SEED': '9', 'HOFC_ALLOW_LARGE': '1'})
    assert config.threads == 2
    assert config.seed == 9
    assert config.enum_bound == 6
    assert config.tolerance == 4.5
    assert config.allow_large is True


@pytest.mark.parametrize('raw', [{'HOFC_THREADS': 'many'}, {'HOFC_THREADS': '0'}, {'HOFC_TOLERANCE': '-1'},
                                 {'HOFC_TRUNC': '0'}])
def test_invalid_values(raw):
    with pytest.raises(ParseError):
        Config.from_env(raw)


def test_sample_config():
    config = Config(threads=3, seed=4, samples=500, batches=10)
    sample_config = config.sample_config(samples=1000)
    assert isinstance(sample_config, SampleConfig)
    assert (sample_config.samples, sample_config.seed, sample_config.threads, sample_config.batches) == \
        (1000, 4, 3, 10)


def test_equality_and_repr():
    assert Config(threads=2) == Config.from_env({}, threads=2)
    assert 'seed=20061101' in repr(Config(threads=2))

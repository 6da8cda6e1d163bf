import logging
import os
from typing import Mapping

from hofree.exceptions import ParseError
from hofree.ps import DEFAULT_ENUM_BOUND
from hofree.rmt.runner import SampleConfig

logger = logging.getLogger(__name__)

FALSE_STRINGS = ('0', 'F', 'FALSE', 'N', 'NO', 'OFF')

ENV_PREFIX = 'HOFC_'


def to_bool(value):
    if value is None or value == '':
        return None
    if isinstance(value, str) and value.upper() in FALSE_STRINGS:
        return False
    return bool(value)


def default_threads() -> int:
    return max(1, min(os.cpu_count() or 1, 8))


OPTION_PARSERS = {
    'threads': int,
    'seed': int,
    'enum_bound': int,
    'allow_large': to_bool,
    'trunc': int,
    'tolerance': float,
    'samples': int,
    'batches': int,
}


class Config:
    """
    Options shared by every command.

    Values come from, in order of precedence, command-line flags, ``HOFC_*``
    environment variables and the defaults below.
    """

    def __init__(self, threads=None, seed=20061101, enum_bound=DEFAULT_ENUM_BOUND, allow_large=False,
                 trunc=12, tolerance=3.0, samples=4000, batches=20):
        self.threads = default_threads() if threads is None else threads
        self.seed = seed
        self.enum_bound = enum_bound
        self.allow_large = allow_large
        self.trunc = trunc
        self.tolerance = tolerance
        self.samples = samples
        self.batches = batches
        if self.threads < 1:
            raise ParseError(f'Invalid value for `threads`: {self.threads}')
        if self.enum_bound < 1:
            raise ParseError(f'Invalid value for `enum_bound`: {self.enum_bound}')
        if self.trunc < 1:
            raise ParseError(f'Invalid value for `trunc`: {self.trunc}')
        if not self.tolerance > 0:
            raise ParseError(f'Invalid value for `tolerance`: {self.tolerance}')
        if self.allow_large:
            logger.warning('enumeration bound checks disabled (allow_large)')

    @staticmethod
    def parse_options(raw: Mapping[str, object]) -> dict:
        options = {}
        for name, value in raw.items():
            if value is None:
                continue
            parser = OPTION_PARSERS.get(name)
            if parser is None:
                continue
            try:
                options[name] = parser(value)
            except (TypeError, ValueError) as e:
                raise ParseError(f'Invalid value for `{name}`: {value!r}') from e
        return options

    @classmethod
    def from_env(cls, environ: Mapping[str, str] = None, **overrides) -> 'Config':
        environ = os.environ if environ is None else environ
        raw = {name: environ.get(ENV_PREFIX + name.upper()) for name in OPTION_PARSERS}
        options = cls.parse_options(raw)
        options.update(cls.parse_options(overrides))
        return cls(**options)

    @classmethod
    def from_args(cls, namespace, environ: Mapping[str, str] = None) -> 'Config':
        """Flags set on an argparse namespace win over the environment."""
        flags = {name: getattr(namespace, name, None) for name in OPTION_PARSERS}
        if flags['allow_large'] is False:
            flags['allow_large'] = None
        return cls.from_env(environ, **flags)

    def sample_config(self, **kwargs) -> SampleConfig:
        options = dict(samples=self.samples, seed=self.seed, threads=self.threads, batches=self.batches)
        options.update(kwargs)
        return SampleConfig(**options)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in OPTION_PARSERS}

    def __eq__(self, other):
        return isinstance(other, Config) and self.as_dict() == other.as_dict()

    def __repr__(self):
        options = ', '.join(f'{k}={v!r}' for k, v in self.as_dict().items())
        return f'{type(self).__name__}<{options}>'

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from hofree.exceptions import SimulationError

logger = logging.getLogger(__name__)


class SampleConfig:
    """
    How many samples to draw and how.

    Results depend on (seed, samples, batches) only; ``threads`` changes the
    schedule, never the numbers.
    """

    def __init__(self, samples: int = 4000, seed: int = 20061101, threads: int = 1, batches: int = 20):
        if samples < 1:
            raise SimulationError(f'need at least one sample, got {samples}')
        if batches < 2 or batches > samples:
            raise SimulationError(f'batches must lie in [2, {samples}], got {batches}')
        if threads < 1:
            raise SimulationError(f'thread budget must be positive, got {threads}')
        self.samples = samples
        self.seed = seed
        self.threads = threads
        self.batches = batches

    def replace(self, **kwargs) -> 'SampleConfig':
        options = dict(samples=self.samples, seed=self.seed, threads=self.threads, batches=self.batches)
        options.update(kwargs)
        return SampleConfig(**options)

    def __repr__(self):
        return (f'{type(self).__name__}<samples={self.samples}, seed={self.seed}, '
                f'threads={self.threads}, batches={self.batches}>')


class SampleRunner:
    """Fills one row per sample index on a thread pool driven from asyncio."""

    CHUNKS_PER_THREAD = 4

    def __init__(self, config: SampleConfig):
        self.config = config

    async def run(self, fn: Callable[[int], np.ndarray], width: int, dtype=complex) -> np.ndarray:
        config = self.config
        rows = np.empty((config.samples, width), dtype=dtype)

        def work(indices):
            for i in indices:
                rows[i] = fn(int(i))

        chunks = [c for c in np.array_split(np.arange(config.samples), config.threads * self.CHUNKS_PER_THREAD)
                  if len(c)]
        loop = asyncio.get_event_loop()
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            await asyncio.gather(*(loop.run_in_executor(executor, work, chunk) for chunk in chunks))
        logger.debug('drew %d samples of width %d on %d threads', config.samples, width, config.threads)
        return rows

    def run_sync(self, fn: Callable[[int], np.ndarray], width: int, dtype=complex) -> np.ndarray:
        return asyncio.run(self.run(fn, width, dtype))

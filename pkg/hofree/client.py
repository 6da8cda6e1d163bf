import asyncio
import logging
from concurrent.futures import Executor
from functools import partial

from hofree.commands.check import CheckCommandMixin
from hofree.commands.combinatorics import CombinatoricsCommandMixin
from hofree.commands.series import SeriesCommandMixin
from hofree.commands.simulation import SimulationCommandMixin
from hofree.commands.weingarten import WeingartenCommandMixin
from hofree.config import Config
from hofree.exceptions import PreconditionError
from hofree.utils import dict_merge

logger = logging.getLogger(__name__)

mixins = [
    CombinatoricsCommandMixin, SeriesCommandMixin, WeingartenCommandMixin,
    SimulationCommandMixin, CheckCommandMixin,
]


class Calculator(*mixins):
    """
    Asynchronous front end to every computation.

    Each command runs its handler off the event loop, on ``executor`` (the
    loop's default when None), and shapes the result with the command's
    response callback into plain data: "p/q" strings, lists and dicts.
    """

    COMMAND_HANDLERS = dict_merge(*(mixin.COMMAND_HANDLERS for mixin in mixins))
    RESPONSE_CALLBACKS = dict_merge(*(mixin.RESPONSE_CALLBACKS for mixin in mixins))

    def __init__(self, config: Config = None, executor: Executor = None, **options):
        self.config = config or Config.from_env(**options)
        self.executor = executor
        self.response_callbacks = self.__class__.RESPONSE_CALLBACKS.copy()

    def __repr__(self):
        return f'{type(self).__name__}<{self.config!r}>'

    def set_response_callback(self, command, callback):
        """Replace how the result of ``command`` is shaped; ``callback(result, **options)``"""
        self.response_callbacks[command] = callback

    async def execute_command(self, *args, **options):
        """
        Run the handler of ``args[0]`` with this calculator's config on the
        executor and pass its result through the command's response callback.
        """
        command_name = args[0]
        try:
            handler = self.COMMAND_HANDLERS[command_name]
        except KeyError as e:
            raise PreconditionError(f'unknown command {command_name!r}') from e
        logger.debug('executing %s', command_name)
        loop = asyncio.get_event_loop()
        response = await loop.run_in_executor(self.executor, partial(handler, self.config, *args[1:], **options))
        return self.parse_response(command_name, response, **options)

    def parse_response(self, command_name, response, **options):
        if command_name in self.response_callbacks:
            callback = self.response_callbacks[command_name]
            return callback(response, **options)
        return response

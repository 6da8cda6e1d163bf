__version__ = "0.1.0"

from hofree.client import Calculator
from hofree.config import Config
from hofree.estimate import Estimate
from hofree.exceptions import (AcceptanceError,
                               BoundExceededError,
                               HofreeError,
                               InvalidPartitionedPermutationError,
                               MissingValueError,
                               ParseError,
                               PreconditionError,
                               SerializeError,
                               SimulationError,
                               SingularSystemError,
                               SizeMismatchError)
from hofree.multfn import MultFn, convolve, moebius_table
from hofree.partition import SetPartition
from hofree.permutation import Permutation
from hofree.ps import PartitionedPermutation
from hofree.series import Series1, Series2

__all__ = [
    'Calculator', 'Config', 'Estimate', 'MultFn', 'PartitionedPermutation', 'Permutation', 'Series1', 'Series2',
    'SetPartition', 'convolve', 'moebius_table',
    'AcceptanceError', 'BoundExceededError', 'HofreeError', 'InvalidPartitionedPermutationError',
    'MissingValueError', 'ParseError', 'PreconditionError', 'SerializeError', 'SimulationError',
    'SingularSystemError', 'SizeMismatchError',
]

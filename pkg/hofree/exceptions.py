class HofreeError(Exception):
    pass


class SizeMismatchError(HofreeError, ValueError):
    pass


class InvalidPartitionedPermutationError(HofreeError, ValueError):
    """A partition is not invariant under its permutation, or an object
    is malformed (not a bijection, overlapping blocks, bad diagram)."""
    pass


class PreconditionError(HofreeError, ValueError):
    pass


class BoundExceededError(PreconditionError):
    pass


class MissingValueError(HofreeError, KeyError):
    pass


class SingularSystemError(HofreeError, ArithmeticError):
    """An exact linear system has no unique solution"""

    def __init__(self, message, N=None):
        super().__init__(message)
        self.N = N


class ParseError(HofreeError, ValueError):
    pass


class SerializeError(HofreeError):
    pass


class AcceptanceError(HofreeError):
    pass


class SimulationError(HofreeError):
    pass

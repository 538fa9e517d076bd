"""Exception hierarchy.

``SchemaError`` covers malformed input (CLI exit code 2); the others are
invariant or precondition violations on well-formed data (exit code 1).
"""


class HFOError(Exception):
    pass


class SchemaError(HFOError, ValueError):
    """Input data does not match the expected shape or conventions."""


class StructuralError(SchemaError):
    """A structure refers to generators it does not have."""


class InvariantError(HFOError):
    """A defining relation (d^2 = 0, the type D relation, ...) fails."""


class PreconditionError(HFOError, ValueError):
    pass


class BoundednessError(HFOError):
    """Neither factor of a box tensor product is bounded."""

    def __init__(self, message, cycles=()):
        super().__init__(message)
        self.cycles = list(cycles)


class WindowTooSmall(HFOError):
    pass

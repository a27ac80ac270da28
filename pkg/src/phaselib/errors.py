"""Structured errors shared across the library."""


class PhaselibError(Exception):
    """Base class for all library errors."""


class DuplicateKeyError(PhaselibError, ValueError):
    pass


class UnsortedInputError(PhaselibError, ValueError):
    pass


class StalledError(PhaselibError, RuntimeError):
    """A round produced no frontier while objects remain unprocessed."""


class CycleError(PhaselibError, ValueError):
    """The dependence structure contains a cycle."""


class InvalidInputError(PhaselibError, ValueError):
    """Problem input violates a precondition (weights, ranges, ...)."""


class AlreadyFinalizedError(PhaselibError, ValueError):
    """A point's value was finalized twice."""


class ParseError(PhaselibError, ValueError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line

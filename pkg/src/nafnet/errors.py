"""Exception hierarchy shared by every module of the package."""


class NafnetError(Exception):
    """Base class for all errors raised by nafnet."""


class PrecisionError(NafnetError, ArithmeticError):
    """A truncated series carries too few known terms to decide a question."""


class NotInFieldError(NafnetError, ValueError):
    """The requested element (typically a square root) is not in the working field."""


class ParseError(NafnetError, ValueError):
    """Malformed text; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class NetworkError(NafnetError, ValueError):
    """A network violates one of its structural invariants."""


class EmptyBoundaryError(NetworkError):
    pass


class SourceInBoundaryError(NetworkError):
    pass


class DisconnectedError(NetworkError):
    pass


class NonPositiveWeightError(NetworkError):
    pass


class SelfLoopError(NetworkError):
    pass


class DuplicateEdgeError(NetworkError):
    pass


class UnknownVertexError(NetworkError):
    pass


class InadmissibleError(NetworkError):
    """A test function does not take the prescribed boundary values."""


class TransformError(NafnetError, ValueError):
    """A transform was requested where its preconditions do not hold."""


class InternalError(NafnetError, RuntimeError):
    """An invariant that valid input guarantees was found broken."""

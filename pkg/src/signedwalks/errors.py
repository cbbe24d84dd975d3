"""Exception hierarchy shared by every module."""


class SignedWalkError(Exception):
    """Base class for all library errors."""


class GraphError(SignedWalkError, ValueError):
    """Malformed graph, signature, or vertex-set argument."""


class WalkError(SignedWalkError, ValueError):
    """A walk could not be built or combined.

    ``position`` is the 1-based index of the first offending edge, when known.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class CapExceeded(SignedWalkError):
    """An enumeration would exceed its configured size cap."""


class UnknownMembership(SignedWalkError):
    """An oracle answered 'unknown' where a definite answer was required."""


class PreconditionError(SignedWalkError, ValueError):
    """A documented precondition of an operation does not hold."""


class DocumentError(SignedWalkError, ValueError):
    """Invalid input document; ``where`` names the line or field."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where

"""Exception types shared across the toolkit."""


class InputValidationError(ValueError):
    """Malformed or inconsistent user supplied data."""


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured resource cap."""


class TruncationError(InputValidationError):
    """A truncated computation cannot answer exactly; increase truncation."""


class ZeroGradedObjectError(InputValidationError):
    """An extreme degree of the zero object was requested."""


class NonExactResolutionError(InputValidationError):
    """A supplied resolution failed its exactness check."""

    def __init__(self, message, degree=None, position=None):
        super().__init__(message)
        self.degree = degree
        self.position = position

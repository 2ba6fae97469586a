"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """A (p, q) pair, coefficient list, or rotation vector violates its domain."""


class InvalidNormError(ValueError):
    """A short-vector query asked for a negative norm."""


class ResultTooLargeError(RuntimeError):
    """A structure enumeration would exceed the requested cap."""

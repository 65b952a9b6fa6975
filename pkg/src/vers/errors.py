"""Exception types shared across the package."""


class VersError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(VersError, ZeroDivisionError):
    pass


class DuplicatePoint(VersError, ValueError):
    """Two evaluation/interpolation points coincide where distinct ones are required."""


class InvalidConfig(VersError, ValueError):
    pass


class InvalidBehavior(VersError, ValueError):
    pass


class TooLargeToEnumerate(VersError, ValueError):
    pass


class InternalInconsistency(VersError, RuntimeError):
    """A model assumption was violated (e.g. honest points not on one polynomial)."""

"""Exception types shared across the package."""


class HBStrataError(ValueError):
    """Base class for domain errors raised on invalid input."""


class BoundExceeded(HBStrataError):
    """An enumeration was requested beyond its configured size bound."""


class ProfileMismatch(HBStrataError):
    """Two alpha types with different ramification profiles were compared."""


class RamifiedPrime(HBStrataError):
    """The prime p divides the discriminant, so no unramified profile exists."""


class FieldTooLarge(HBStrataError):
    """A point count would enumerate more tuples than the configured limit."""


class NonIntegralCount(HBStrataError):
    """A component count came out non-integral (usually a bad class factor)."""


class InconsistentCounts(RuntimeError):
    """Two independent evaluations of the same count disagree."""

"""Exception types shared across the package."""


class LowRankError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedRingError(LowRankError):
    """A ring kind, homomorphism, or ring-specific method is not supported."""


class AlgebraFormatError(LowRankError):
    """A serialized ring, element, or algebra could not be parsed."""


class NoUnitError(LowRankError):
    """The structure tensor admits no two-sided identity element."""


class NotAssociativeError(LowRankError):
    """The structure tensor violates associativity; carries a witness triple."""

    def __init__(self, triple, message=None):
        self.triple = tuple(triple)
        super().__init__(message or f"associativity fails on basis triple {self.triple}")


class SearchSpaceExceededError(LowRankError):
    """An exhaustive enumeration would exceed the configured bound."""


class InternalCheckError(LowRankError):
    """A certified identity failed; this signals a bug, never a user error."""

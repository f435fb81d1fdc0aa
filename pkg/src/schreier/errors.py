"""Shared exception types."""


class SchreierError(Exception):
    pass


class OrdinalParseError(SchreierError):
    """Raised on malformed or non-canonical ordinal notation."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CapExceeded(SchreierError):
    """A resource cap (support size, window, enumeration bound) was hit.

    Carries enough context to report which computation blew up.
    """

    def __init__(self, message, ordinal=None, index=None):
        super().__init__(message)
        self.ordinal = ordinal
        self.index = index


class ValidationError(SchreierError):
    """An internal cross-check (e.g. threshold window validation) failed."""

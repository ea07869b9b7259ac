"""Shared exception types."""


class PrefArgError(Exception):
    """Base class for all errors raised by this package."""


class FormulaSyntaxError(PrefArgError):
    """Malformed formula text; carries the character offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class KBFormatError(PrefArgError):
    """Malformed or invalid knowledge-base input."""


class AFFormatError(PrefArgError):
    """Malformed abstract-framework input."""


class CapExceededError(PrefArgError):
    """An enumeration would exceed the configured cap."""

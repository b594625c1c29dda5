"""Exception hierarchy."""

from __future__ import annotations


class NilstringError(Exception):
    """Base class for every error raised by this package."""


class PresentationError(NilstringError, ValueError):
    """Malformed presentation data (bad orders, out-of-range exponents)."""


class InconsistentPresentation(NilstringError):
    """The presentation does not define a group of the advertised order."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class NotClass2(NilstringError):
    """A group (or presentation) fails the nilpotency-class-at-most-2 check."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class InvalidTable(NilstringError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class EvenOrder(NilstringError):
    pass


class NotNilpotent(NilstringError):
    pass


class NotAbelianRealizable(NilstringError, ValueError):
    pass


class BudgetExceeded(NilstringError):
    """A computation would exceed its configured size or effort budget."""


class SearchBudgetExceeded(BudgetExceeded):
    pass


class ConfigError(NilstringError, ValueError):
    pass

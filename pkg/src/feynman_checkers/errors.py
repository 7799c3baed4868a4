"""Exception types raised by the library."""


class CheckersError(ValueError):
    """Base class for invalid inputs to the checkers model."""


class DomainError(CheckersError):
    """An argument lies outside the range where a formula holds."""


class ResourceLimitError(CheckersError):
    """A requested time exceeds the configured computation cap."""


class FieldError(CheckersError):
    """An edge field is malformed or lacks a required edge value."""

"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class DomainError(AlgebraError, ValueError):
    """An operation was called outside its mathematical domain."""


class TableMismatchError(DomainError):
    """Two polynomials (or a map and its argument) live over different generator tables."""


class ResourceLimitError(AlgebraError):
    """A configured size or degree cap was exceeded; nothing is silently truncated."""


class UnsupportedParityError(DomainError):
    """The requested presentation requires an odd half-dimension."""


class UnsupportedCaseError(DomainError):
    """The requested presentation is deliberately left undefined."""


class ParseError(AlgebraError, ValueError):
    """A kappa-expression failed to parse; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position

"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SymcapError(Exception):
    """Base class for all library errors."""


class InvalidDomain(SymcapError, ValueError):
    pass


class DimensionError(SymcapError, ValueError):
    pass


class UnboundedDiagonal(SymcapError, ValueError):
    pass


class Undecidable(SymcapError):
    """Raised when an inclusion cannot be decided exactly."""


class UnsupportedDomain(SymcapError, ValueError):
    pass


class InvalidWinding(SymcapError, ValueError):
    pass


class InconsistentData(SymcapError, ValueError):
    pass


class IrrationalEigenvalue(SymcapError, ValueError):
    pass


class DegeneratePath(SymcapError, ValueError):
    pass


class InvalidScale(SymcapError, ValueError):
    pass


class Inconsistent(SymcapError, AssertionError):
    """An internal cross-check failed; indicates a bug, never bad input."""


class EnumerationLimit(SymcapError):
    """Spectrum enumeration would exceed the configured cap."""


class ParseError(SymcapError, ValueError):
    pass

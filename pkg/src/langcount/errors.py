"""Exception types raised by langcount."""


class LangCountError(Exception):
    """Base class for all langcount errors."""


class InternalInconsistencyError(LangCountError):
    """Two exact computations that must agree did not.

    Never caused by user input; it signals an arithmetic bug.
    """


class EnumerationCapError(LangCountError, ValueError):
    """Literal enumeration was asked for a size above the configured cap."""


class AccuracyError(LangCountError):
    """A numerical routine could not certify the requested accuracy."""

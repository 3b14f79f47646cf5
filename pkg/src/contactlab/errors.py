"""Exception types raised across the package."""


class ContactLabError(Exception):
    """Base class for all package errors."""


class AlgebraMismatchError(ContactLabError, ValueError):
    """Operands belong to different algebras (or ambient spaces)."""


class CapabilityError(ContactLabError):
    """A requested computation exceeds an enumeration cap or is undefined for the input class."""


class PreconditionError(ContactLabError, ValueError):
    """An operation was called on input that violates its precondition."""


class ApproximationError(ContactLabError):
    """A certified claim was requested for an approximated (non-exact) object."""


class ParseError(ContactLabError, ValueError):
    """Malformed textual input (model file, region literal, property expression)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)

"""Exception and warning types shared across the package."""


class QldpcError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(QldpcError, ValueError):
    """A numeric parameter is out of its documented range."""


class DimensionError(QldpcError, ValueError):
    """Operands have incompatible shapes."""


class ParseError(QldpcError, ValueError):
    """A serialized matrix file is malformed.

    Carries the 1-based line number (and column, when known) of the
    offending location.
    """

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class DegeneratePruneError(QldpcError, ValueError):
    """Pruning would delete every row of the matrix."""


class FeasibilityWarning(UserWarning):
    """Requested parameters are unlikely to admit a solution."""

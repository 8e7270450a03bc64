"""Exception hierarchy.

Every numerical failure derives from :class:`MaxminError` and carries a short
machine-greppable ``code`` that the CLI prints as ``ERROR: <code>: <message>``.
"""


class MaxminError(Exception):
    code = "error"


class DimensionError(MaxminError, ValueError):
    code = "dimension"


class InvalidMatrixError(MaxminError, ValueError):
    code = "invalid-matrix"


class SymmetryError(MaxminError, ValueError):
    code = "not-symmetric"


class NotPositiveDefiniteError(MaxminError, ValueError):
    code = "not-positive-definite"

    def __init__(self, pivot, value):
        self.pivot = pivot
        self.value = value
        super().__init__(f"pivot {pivot} is not positive (value {value:.3e})")


class KernelNotTrivialError(MaxminError):
    code = "nontrivial-kernel"


class NoSolutionError(MaxminError):
    code = "no-solution"


class RangeFilterError(MaxminError):
    code = "range-filter"


class DegenerateColumnError(MaxminError, ValueError):
    code = "degenerate-column"

    def __init__(self, column, name=None):
        self.column = column
        label = f"{column} ({name})" if name else str(column)
        super().__init__(f"column {label} has zero variance")


class DomainError(MaxminError, ValueError):
    code = "domain"


class MatrixParseError(ValueError):
    """Malformed CSV input. Not a ``MaxminError``: the CLI treats it as usage."""

    def __init__(self, path, line, column, reason):
        self.path = path
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {reason}")

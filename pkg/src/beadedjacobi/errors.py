"""Exception hierarchy.

Every error carries a machine-readable ``code`` which the command line maps
to a distinct exit status.
"""


class BeadedError(Exception):
    code = "error"
    exit_status = 1


class ParseError(BeadedError):
    """Malformed text input; ``line`` and ``column`` are 1-based when known."""

    code = "parse"
    exit_status = 2

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(BeadedError):
    """Well-formed input that violates a mathematical precondition."""

    code = "validation"
    exit_status = 3


class ContextMismatchError(ValidationError):
    code = "context-mismatch"


class AlexanderNormalizationError(ValidationError):
    """A candidate denominator fails ``p(1) = 1`` or the symmetry condition.

    ``failed`` is ``"value_at_one"`` or ``"symmetry"``.
    """

    code = "alexander"

    def __init__(self, message, failed):
        self.failed = failed
        super().__init__(message)


class BudgetError(BeadedError):
    """A requested enumeration exceeds its configured size cap."""

    code = "budget"
    exit_status = 4


class InternalCheckError(BeadedError):
    """A built-in consistency check failed."""

    code = "internal-check"
    exit_status = 5

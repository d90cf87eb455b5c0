"""Exception hierarchy shared across the package.

Domain errors (bad but well-formed parameters) and internal consistency
failures are kept apart so the CLI can map them to distinct exit codes.
"""


class ExactCFTError(Exception):
    """Base class for all package errors."""


class VariableMismatchError(ExactCFTError):
    """Operands do not share a compatible variable set."""


class NegativeExponentError(ExactCFTError):
    """A substitution or division would create a negative exponent in a polynomial."""


class DegenerateParameterError(ExactCFTError):
    """Parameters hit a pole or excluded value (vanishing Pochhammer, h = 0, odd dimension gap)."""


class SingularDiagonalError(ExactCFTError):
    """Evaluation on the diagonal x_i = x_j is singular: the pole bound is violated."""


class ConsistencyError(ExactCFTError):
    """An internal cross-check failed; indicates a bug, not bad input."""

"""Exception types shared across the package."""


class RcbsError(Exception):
    """Base class for all library errors."""


class InvariantViolation(RcbsError):
    """A dataset or record failed one of its construction invariants."""


class ZeroDenominator(RcbsError):
    """A ratio point a_k / conj(b_k) was requested with b_k = 0.

    Also raised (with index -1) for a vanishing aggregate divisor.
    """

    def __init__(self, index: int, message: str | None = None):
        if message is None:
            message = f"b[{index}] = 0: ratio point a/conj(b) undefined"
        super().__init__(message)
        self.index = index


class InvalidParams(RcbsError):
    """Bound or witness parameters outside their admissible range."""


class Inapplicable(RcbsError):
    """A classical (real positive) bound was evaluated on unsuitable data."""


class EquivalenceMismatch(RcbsError):
    """Two algebraically identical condition forms disagreed numerically.

    This signals an implementation bug, never an expected runtime event.
    """


class EmptyInput(RcbsError):
    """An operation requiring at least one point received none."""


class ParseError(RcbsError):
    """Malformed dataset file."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.line = line
        self.field = field


class UnknownTheorem(RcbsError):
    """An unrecognized theorem identifier was passed to the witness tools."""

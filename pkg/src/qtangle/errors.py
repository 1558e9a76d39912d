"""Exception hierarchy.

Every error raised by the library derives from :class:`QTangleError`, which
is itself a ``ValueError`` so callers that only care about bad input can
catch the builtin.
"""


class QTangleError(ValueError):
    """Base class for all library errors."""


# numeric core
class NotSquare(QTangleError):
    pass


class NotHermitian(QTangleError):
    pass


class NotPSD(QTangleError):
    pass


class NotUnitary(QTangleError):
    pass


class DimensionTooLarge(QTangleError):
    pass


# state model
class UnsupportedSize(QTangleError):
    pass


class EmptyKeepSet(QTangleError):
    pass


class IndexOutOfRange(QTangleError, IndexError):
    pass


class NormError(QTangleError):
    pass


class TraceError(QTangleError):
    pass


class ParseError(QTangleError):
    """Malformed QST/QDM text. ``lineno`` is 1-based, or None if unknown."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


# measures
class WrongQubitCount(QTangleError):
    pass


class UndefinedForOddN(QTangleError):
    pass


class OddNUnsupported(QTangleError):
    pass


class OracleTooLarge(QTangleError):
    pass


class NotAPermutation(QTangleError):
    pass


class ConvergenceFailure(QTangleError):
    pass


class RangeError(QTangleError):
    pass


class ZeroTangle(QTangleError):
    """Raised when a monotonicity ratio would divide by a vanishing tangle."""

"""Exception types shared across the package."""


class SumRankError(Exception):
    """Base class for all package-specific errors."""


class NotAPrimePower(SumRankError, ValueError):
    """Raised when a field order is not a prime power."""


class DimensionMismatch(SumRankError, ValueError):
    """Raised when matrix or vector shapes are incompatible."""


class InvalidShape(SumRankError, ValueError):
    """Raised when an object has an impossible shape (e.g. rows > cols)."""


class IndexOutOfRange(SumRankError, ValueError):
    """Raised when a rank index exceeds min(rows, cols)."""


class InvalidParams(SumRankError, ValueError):
    """Raised when parameters fall outside an operation's domain."""


class InvalidWeight(SumRankError, ValueError):
    """Raised when a requested weight exceeds the maximum possible weight."""


class InfeasibleTarget(SumRankError, ValueError):
    """Raised when a weight budget cannot be distributed over the blocks."""


class InfeasibleParams(SumRankError, ValueError):
    """Raised when a table or distribution is requested for impossible parameters."""


class InvalidPrefix(SumRankError, ValueError):
    """Raised when a decomposition prefix is malformed (unsorted or out of range)."""


class InvalidDims(SumRankError, ValueError):
    """Raised when code dimensions are invalid (need 0 < k < n)."""


class TooLarge(SumRankError, ValueError):
    """Raised when an enumeration or LP exceeds its configured budget."""


class WrongRegime(SumRankError, ValueError):
    """Raised when a specialization formula is evaluated outside its regime."""


class UnknownModel(SumRankError, ValueError):
    """Raised for an unrecognized per-iteration cost model identifier."""


class IterationCapExceeded(SumRankError, RuntimeError):
    """Raised when the generic decoder hits its iteration cap.

    The decoder is Las Vegas: hitting the cap means "still running", never a
    wrong answer.  Carries the tallies accumulated so far.
    """

    def __init__(self, message, iterations=0, tallies=None):
        super().__init__(message)
        self.iterations = iterations
        self.tallies = tallies or {}

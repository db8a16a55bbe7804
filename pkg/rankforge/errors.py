# rankforge/errors.py

from typing import Optional, Sequence, Tuple


class RankForgeError(Exception):
    """Base class for every error raised by rankforge."""


class InputError(RankForgeError, ValueError):
    """
    User input that cannot be turned into a matrix, game table or link graph.

    Args:
        message: human readable reason.
        line: 1-based line number in the input stream, when known.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(InputError):
    """Malformed line, bad token, self-game, duplicate pairing or bad count."""


class InvalidMatrixError(InputError):
    """Matrix that is not square, empty, negative or non-finite."""


class DimensionMismatchError(RankForgeError, ValueError):
    def __init__(self, expected: int, got: int) -> None:
        self.expected = expected
        self.got = got
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class ZeroVectorError(RankForgeError, ArithmeticError):
    """Raised when a vector with no positive entry has to be normalized."""

    def __init__(self, message: str = "ZeroVector") -> None:
        super().__init__(message)


class MalformedColumnError(RankForgeError, ValueError):
    """A hyperlink column sums to something other than 0 or 1."""

    def __init__(self, column: int, total: float) -> None:
        self.column = column
        self.total = total
        super().__init__(f"column {column} sums to {total!r}, expected 0 or 1")


class ConvergenceError(RankForgeError):
    """A computation that did not settle within its budget."""


class EpsilonLimitDiverged(ConvergenceError):
    """
    The ε schedule was exhausted without two consecutive score vectors
    agreeing within limit_tol.

    Attributes:
        trace: (ε, normalized scores, eigenvalue) for every schedule entry.
    """

    def __init__(self, trace: Sequence[Tuple[float, Sequence[float], float]], limit_tol: float) -> None:
        self.trace = list(trace)
        self.limit_tol = limit_tol
        super().__init__(
            f"EpsilonLimitDiverged: no consecutive pair of {len(self.trace)} ε values "
            f"agreed within {limit_tol:g}"
        )

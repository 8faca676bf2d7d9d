"""Exception hierarchy.

Errors fall into three families that the command line maps to exit codes:
arithmetic misuse (ring mismatch, inexact division), mathematical failures
of a particular system (singular, zero pivot, condensation breakdown) and
input-format problems.
"""

from __future__ import annotations


class FracFreeError(Exception):
    """Base class for every error raised by this package."""


class RingMismatch(FracFreeError, TypeError):
    """Operands do not belong to the ring performing the operation."""


class DivisionByZero(FracFreeError, ZeroDivisionError):
    pass


class NotExact(FracFreeError, ArithmeticError):
    """The quotient a/b does not exist in the ring.

    On a sanctioned division step of any solver this means corrupted input or
    a bug, never a property of the system being solved.
    """


class MathFailure(FracFreeError):
    """The system cannot be handled by the requested method."""


class SingularSystem(MathFailure):
    pass


class NoValidPivot(SingularSystem):
    """No row ordering makes every corner minor nonzero."""


class ZeroCornerMinor(MathFailure):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"corner minor of order {k} is zero")


class CondensationBreakdown(MathFailure):
    """A condensation denominator vanished.

    ``k`` is the condensation step (order of the 2x2 operands), ``(i, j)`` the
    1-based position of the entry that could not be formed.
    """

    def __init__(self, k: int, i: int, j: int):
        self.k, self.i, self.j = k, i, j
        super().__init__(f"condensation breakdown at step {k}, entry ({i},{j})")


class NotSquare(FracFreeError, ValueError):
    pass


class UnluckyPrime(MathFailure):
    """The determinant vanishes modulo this prime; pick another one."""

    def __init__(self, p: int):
        self.p = p
        super().__init__(f"determinant vanishes modulo {p}")


class InsufficientPrimes(MathFailure):
    pass


class ParseError(FracFreeError, ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class SystemSyntaxError(ParseError):
    pass


class DimensionError(ParseError):
    pass


class RingError(ParseError):
    """Malformed polynomial text or an unusable modulus."""

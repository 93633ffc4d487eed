"""Error taxonomy shared by the whole package.

Every error is machine-distinguishable by class.  Positions, when known,
are character offsets into the source expression (CLI) or digit positions
(library searches).
"""

from __future__ import annotations


class RdecError(Exception):
    """Base class for all package errors.

    ``position`` and ``span``, when set, locate the error: a character
    offset or offset range for front-end errors, a digit position for
    library searches.
    """

    position: int | None = None
    span: tuple[int, int] | None = None


class FuelExhausted(RdecError):
    """A semi-decidable digit search ran out of budget without progress.

    Raised instead of ever emitting an unproven digit.
    """

    def __init__(self, message: str, *, budget: int | None = None,
                 position: int | None = None):
        super().__init__(message)
        self.budget = budget
        self.position = position


class DivisionByZero(RdecError, ZeroDivisionError):
    """Reciprocal or division of a value proved to be zero."""


class NegativeRadicand(RdecError, ValueError):
    """Square root requested for a negative radicand."""


class NonCanonicalInput(RdecError, ValueError):
    """A digit source produced something outside the digit range 0..9."""

    def __init__(self, message: str, *, position: int | None = None):
        super().__init__(message)
        self.position = position


class UnsupportedSqrtOperand(RdecError):
    """sqrt applied to an operand without an exact rational backing."""


class LexError(RdecError, ValueError):
    """Unrecognized input character during tokenization."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class ParseError(RdecError, ValueError):
    """Token stream does not match the expression grammar."""

    def __init__(self, message: str, position: int, expected: str | None = None):
        super().__init__(message)
        self.position = position
        self.expected = expected

"""Exception types raised across the package."""

from __future__ import annotations


class BraidOrderError(Exception):
    """Base class for all errors raised by braidorder."""


class IndexOutOfRange(BraidOrderError, ValueError):
    pass


class RankMismatch(BraidOrderError, ValueError):
    pass


class MissingImage(BraidOrderError, KeyError):
    pass


class ParseError(BraidOrderError, ValueError):
    """Malformed word, braid or endomorphism text.

    ``line`` and ``column`` are 1-based and point at the offending character.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class StrandMismatch(BraidOrderError, ValueError):
    pass


class NotConjugacyForm(BraidOrderError, ValueError):
    """An image is not a conjugate of a positive generator."""

    def __init__(self, generator: int, image: str):
        super().__init__(f"image of x{generator} is not a conjugate of a generator: {image}")
        self.generator = generator
        self.image = image


class SigmaNotBijective(BraidOrderError, ValueError):
    pass


class I0NotFixed(BraidOrderError, ValueError):
    pass


class NoFixedPoint(BraidOrderError, ValueError):
    pass


class DepthExceedsCap(BraidOrderError, ArithmeticError):
    """All nonconstant Magnus terms up to ``cap`` vanish; retry with a larger cap."""

    def __init__(self, cap: int):
        super().__init__(f"lower central series depth exceeds degree cap {cap}")
        self.cap = cap


class HNonzero(BraidOrderError, ValueError):
    pass


class GcdViolation(BraidOrderError, ValueError):
    pass


class PreconditionError(BraidOrderError, ValueError):
    pass

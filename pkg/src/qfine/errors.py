"""Exception types shared across the engine."""


class QfineError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(QfineError, ZeroDivisionError):
    """Division by the zero polynomial or zero rational function."""


class PoleError(QfineError, ZeroDivisionError):
    """A denominator vanished at a concrete evaluation point."""


class IdenticallyZeroDenominator(QfineError):
    """A substitution or series construction annihilated a denominator."""


class NonInvertibleAtQZero(QfineError):
    """q-adic expansion impossible: the q-constant coefficient of the
    denominator is zero in the coefficient field."""


class NegativeQDegree(QfineError):
    """Infinite q-Pochhammer argument with negative q-degree."""


class ConstraintViolation(QfineError):
    """Identity parameters outside their declared range or constraints."""


class Exhausted(QfineError):
    """Sampler redraw budget exhausted without finding a pole-free point."""


class InternalError(QfineError):
    """An arithmetic invariant was violated (indicates a bug)."""


class ParseError(QfineError):
    """Syntax error in CLI expression input.

    Carries the byte offset of the failure and the set of token kinds
    that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        detail = f" (expected: {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")

"""Exception types shared across the package."""

from __future__ import annotations


class OligoError(Exception):
    """Base class for all package errors."""


class LimitExceeded(OligoError):
    """A brute-force enumeration outgrew its configured budget."""


class DegreeMismatch(OligoError):
    pass


class NotACongruence(OligoError):
    pass


class OutOfRange(OligoError):
    pass


class SpecInvalid(OligoError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class FiberMismatch(OligoError):
    pass


class NonIntegerAverage(OligoError):
    """A Burnside-style average did not divide exactly."""


class NegativeCoefficient(OligoError):
    pass


class ParseError(OligoError):
    def __init__(self, message: str, position: int = 0, line: int | None = None,
                 column: int | None = None, token: str | None = None):
        self.message = message
        self.position = position
        self.line = line
        self.column = column
        self.token = token
        if line is None:
            super().__init__(f"{message} (at offset {position})")
        else:
            near = "end of input" if token is None else repr(token)
            super().__init__(f"line {line}, column {column}: {message} near {near}")


class UnknownAtom(OligoError):
    pass


class Unsupported(OligoError):
    pass


class CoverCheckFailed(OligoError):
    pass


class KindMismatch(OligoError):
    pass


class EmptyCoefficients(OligoError):
    pass


class UnsupportedConversion(OligoError):
    pass


class AllZeroTail(OligoError):
    pass


class NotTruncatable(OligoError):
    pass


class InvalidCover(OligoError):
    pass


class InconsistentDescent(OligoError):
    pass


class NotNormalizing(OligoError):
    pass

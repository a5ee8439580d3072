"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class SmoothredError(Exception):
    """Base class for all errors raised by this package."""


class DescriptorMismatch(SmoothredError, TypeError):
    """Operands belong to different rings."""


class ContextMismatch(SmoothredError, TypeError):
    """Polynomials live in different (ring, variables, order) contexts."""


class ShapeMismatch(SmoothredError, ValueError):
    """Certificate or matrix dimensions do not fit the presentation."""


class UnsupportedCoefficientRing(SmoothredError):
    """The requested algorithm is not available over this coefficient ring."""


class IntegralSolveFailed(SmoothredError):
    """A rational solution exists within the degree cap but no integral one was found."""

    def __init__(self, degree_cap: int):
        super().__init__(
            f"a solution exists over QQ but none over ZZ up to degree {degree_cap}"
        )
        self.degree_cap = degree_cap


class Inconclusive(SmoothredError):
    """Certificate search hit its degree cap.

    This is never evidence that the algebra is not smooth.
    """

    def __init__(self, degree_cap: int, reason: str = "no Jacobian right inverse found"):
        super().__init__(f"inconclusive at degree cap {degree_cap}: {reason}")
        self.degree_cap = degree_cap
        self.reason = reason


class InvalidCertificate(SmoothredError, ValueError):
    """A certificate failed exact verification where a valid one was required."""


class InternalError(SmoothredError, AssertionError):
    """An internally produced witness failed its own re-verification."""


class ParseError(SmoothredError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)

"""
Exceptions raised by pyradical

RadicalError is the root of the hierarchy
Input and configuration problems are also ValueErrors
Numerical failures are also ArithmeticErrors
"""

from typing import Any, Optional, Tuple


class RadicalError(Exception):
    """Base class for every error raised by pyradical"""

    pass


class ParseError(RadicalError, ValueError):
    """A curve expression or job configuration could not be read"""

    pass


class ZeroPolynomial(RadicalError, ValueError):
    """An operation that needs a nonzero polynomial received the zero polynomial"""

    pass


class InvalidBreakpoints(RadicalError, ValueError):
    """A breakpoint sequence is not strictly increasing from 0 to 1 or has the wrong length"""

    pass


class InvalidAlpha(RadicalError, ValueError):
    """A Moebius shape parameter lies outside the open interval (0, 1)"""

    pass


class PieceMismatch(RadicalError, ValueError):
    """Two piecewise transforms cannot be composed piece for piece"""

    pass


class DomainError(RadicalError, ValueError):
    """A transform was evaluated outside [0, 1]"""

    pass


class DegenerateLine(RadicalError, ValueError):
    """The angular speed vanishes identically, so the curve is a straight line"""

    pass


class SingularCurve(RadicalError, ValueError):
    """
    The hodograph vanishes somewhere on [0, 1]

    Parameters
    ----------
    message : str
    bracket : Tuple[Any, Any] = None
        an exact interval containing the offending parameter, if known
    """

    def __init__(self, message: str, bracket: Optional[Tuple[Any, Any]] = None) -> None:
        super().__init__(message)
        self.bracket = bracket


class MalformedF(RadicalError, ArithmeticError):
    """The sum-of-squares numerator has a root of odd multiplicity in [0, 1]"""

    pass


class QuadratureError(RadicalError, ArithmeticError):
    """
    Adaptive quadrature did not reach the requested tolerance

    Parameters
    ----------
    message : str
    estimate : float = None
        the best value found before giving up
    error_bound : float = None
        the error estimate that went with @estimate
    """

    def __init__(
        self,
        message: str,
        estimate: Optional[float] = None,
        error_bound: Optional[float] = None,
    ) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class SingularDerivative(RadicalError, ArithmeticError):
    """A radical piece was differentiated at the breakpoint where its derivative diverges"""

    pass


class DegeneratePiece(RadicalError, ArithmeticError):
    """A piece integral that must be positive is not"""

    pass


class IllConditionedRoot(RadicalError, ArithmeticError):
    """The Euclidean remainder left by an approximate root is too large for the tolerance"""

    pass


class InexactDivision(RadicalError, ArithmeticError):
    """An exact polynomial division left a nonzero remainder"""

    pass

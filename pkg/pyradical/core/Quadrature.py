"""
Adaptive quadrature on subintervals of [0, 1]

`integrate` wraps QUADPACK's adaptive Gauss-Kronrod rule (scipy.integrate.quad)
An integrable power singularity declared at an endpoint is removed by a change of variable first
"""

import logging
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Tuple

from scipy.integrate import quad

from .Errors import QuadratureError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Integrand:
    """
    A real function of one variable to integrate

    Parameters
    ----------
    evaluator : Callable[[float], float]
        finite on the open interval of integration
    endpoint_behavior : Tuple[float, float] = None
        (endpoint, exponent) when the integrand behaves like |t - endpoint|^exponent there
        exponent must exceed -1
    """

    evaluator: Callable[[float], float]
    endpoint_behavior: Optional[Tuple[float, float]] = None

    def __post_init__(self) -> None:
        if self.endpoint_behavior is not None and not self.endpoint_behavior[1] > -1:
            raise ValueError("Integrand@endpoint_behavior exponent must exceed -1")

    def __call__(self, t: float) -> float:
        return self.evaluator(t)


class QuadratureResult(NamedTuple):
    value: float
    error_bound: float
    evaluations: int


def integrate(
    f: Integrand,
    a: float,
    b: float,
    tol: float = DEFAULT_TOLERANCE,
    *,
    limit: int = 200,
) -> QuadratureResult:
    """
    Integrates @f over [a, b]

    Parameters
    ----------
    f : Integrand
        a bare callable is accepted and treated as having no declared singularity
    a, b : float
        the interval, a < b
    tol : float = 1e-9
        used as both absolute and relative tolerance
    limit : int = 200
        the maximum number of subintervals

    Returns
    -------
    QuadratureResult
        value, error_bound <= max(tol, tol * |value|), and the number of evaluations

    Raises
    ------
    ValueError
        if a >= b or tol is not positive
    QuadratureError
        if the requested accuracy is not reached, carrying the best estimate
    """
    if not a < b:
        raise ValueError("integrate@a must be less than b")
    if not tol > 0:
        raise ValueError("integrate@tol must be positive")
    if not isinstance(f, Integrand):
        f = Integrand(f)

    evaluator = f.evaluator
    lo, hi = a, b
    behavior = f.endpoint_behavior
    if behavior is not None and -1 < behavior[1] < 0:
        evaluator, lo, hi = _desingularize(f, a, b)

    result = quad(evaluator, lo, hi, epsabs=tol, epsrel=tol, limit=limit, full_output=1)
    value, error, info = result[0], result[1], result[2]
    evaluations = int(info.get("neval", 0))

    if len(result) > 3 or error > max(tol, tol * abs(value)):
        message = result[3] if len(result) > 3 else "error bound above tolerance"
        logger.debug("quadrature on [%g, %g] failed: %s", a, b, message)
        raise QuadratureError(
            f"integrate did not converge on [{a}, {b}]: {message}",
            estimate=value,
            error_bound=error,
        )
    return QuadratureResult(value, error, evaluations)


def _desingularize(f: Integrand, a: float, b: float) -> Tuple[Callable[[float], float], float, float]:
    """
    Substitutes t = end ± (b - a) v^k, k = 1 / (1 + exponent), over v in [0, 1]
    which turns |t - end|^exponent into a bounded integrand
    """
    end, exponent = f.endpoint_behavior
    if end not in (a, b):
        raise ValueError("Integrand@endpoint_behavior must name an endpoint of [a, b]")
    k = 1.0 / (1.0 + exponent)
    width = b - a
    direction = 1.0 if end == a else -1.0

    # QUADPACK never samples v = 0
    def substituted(v: float) -> float:
        return f.evaluator(end + direction * width * v**k) * width * k * v ** (k - 1)

    return substituted, 0.0, 1.0

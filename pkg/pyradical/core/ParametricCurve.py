import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    rationalize,
    standard_transformations,
)
from sympy.polys.polyerrors import BasePolynomialError

from .Errors import (
    DegenerateLine,
    DomainError,
    MalformedF,
    ParseError,
    SingularCurve,
)
from .Polynomial import T, IsolatedRoot, Polynomial, RationalFunction
from .Quadrature import DEFAULT_TOLERANCE, Integrand, integrate

logger = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor, rationalize)


@dataclass(frozen=True)
class UniformityReport:
    """
    Mean, variance and uniformity of an angular speed function over [0, 1]

    Properties
    ----------
    mu : float
        the mean angular speed
    sigma2 : float
        the variance of the angular speed
    uniformity : float
        1 / (1 + sigma2 / mu^2), or 1 when mu is 0
    quad_error_bound : float
        the summed quadrature error estimates behind these numbers
    """

    mu: float
    sigma2: float
    uniformity: float
    quad_error_bound: float = 0.0

    def __post_init__(self) -> None:
        if not 0 < self.uniformity <= 1:
            raise ValueError("UniformityReport@uniformity must lie in (0, 1]")

    @classmethod
    def from_moments(
        cls, mu: float, second_moment: float, error: float = 0.0
    ) -> "UniformityReport":
        """
        Builds the report from mu = integral of omega and second_moment = integral of omega^2
        Uses u = mu^2 / second_moment, which equals the variance form
        """
        if mu == 0 or second_moment <= 0:
            return cls(mu, 0.0, 1.0, error)
        sigma2 = max(second_moment - mu * mu, 0.0)
        uniformity = min(mu * mu / second_moment, 1.0)
        return cls(mu, sigma2, uniformity, error)

    @classmethod
    def uniform(cls) -> "UniformityReport":
        """The report of a straight line"""
        return cls(0.0, 0.0, 1.0, 0.0)


@dataclass(frozen=True)
class AngularSpeedData:
    """
    The polynomial data behind omega_p = sqrt(F) / denom

    Properties
    ----------
    F : Polynomial
        the sum of squared 2x2 minors, nonnegative on the real line
    denom : Polynomial
        the sum of the squared reduced hodograph numerators
    zeta : Polynomial
        F with the square-free factors carrying its zeros on [0, 1] divided out
    zero_factors : List[IsolatedRoot]
        the zeros of omega_p in [0, 1], multiplicities counted for omega_p
    """

    F: Polynomial
    denom: Polynomial
    zeta: Polynomial
    zero_factors: List[IsolatedRoot]


class ZeroCofactor:
    """
    The factor left over when the zero at @root is divided out of omega_p^2

    omega_p^2 = G / H = (t - gamma)^(2 mu) * Q / H + R / H, where gamma is an exact
    approximant of the root and R vanishes when gamma is exact
    Dropping R gives a factor that stays finite and positive at the zero

    Parameters
    ----------
    root : IsolatedRoot
        a zero of omega_p, multiplicity counted for omega_p
    numerator, denominator : Polynomial
        G and H

    Properties
    ----------
    root : IsolatedRoot
    multiplicity : int
        mu
    gamma : Rational
        the approximant divided out
    quotient : Polynomial
        Q
    residual : float
        the relative size of the dropped remainder R

    Methods
    -------
    __call__(t)
        |omega_p(t)| / |t - root|^mu, finite at the root
    squared(t)
        Q(t) / H(t)
    """

    def __init__(
        self, root: IsolatedRoot, numerator: Polynomial, denominator: Polynomial
    ) -> None:
        self._root = root
        self._gamma = root.approximant()
        division = numerator.euclidean_division(self._gamma, 2 * root.multiplicity)
        self._quotient = division.quotient
        self._denominator = denominator
        self._residual = division.residual

    @property
    def root(self) -> IsolatedRoot:
        return self._root

    @property
    def multiplicity(self) -> int:
        return self._root.multiplicity

    @property
    def gamma(self) -> sympy.Rational:
        return self._gamma

    @property
    def quotient(self) -> Polynomial:
        return self._quotient

    @property
    def residual(self) -> float:
        return self._residual

    def squared(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return self._quotient(t) / self._denominator(t)

    def __call__(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return np.sqrt(np.maximum(self.squared(t), 0.0))


class ParametricCurve:
    """
    A rational parametric curve p(t) = (x_1(t), ..., x_n(t)) in R^n, n >= 2, regular on [0, 1]

    Parameters
    ----------
    coordinates : Sequence[RationalFunction]
        the coordinate functions x_i(t)
    *
    root_tolerance : float = 1e-12
        bracket width used when isolating the zeros of the angular speed

    Properties
    ----------
    coordinates : Tuple[RationalFunction]
    dimension : int
    hodograph : Tuple[Tuple[Polynomial], Polynomial]
        (X_1, ..., X_n) and W with p'(t) = (X_1 / W, ..., X_n / W), gcd(X_1, ..., X_n, W) = 1
    F : Polynomial
        the sum over i < j of (X_i' X_j - X_j' X_i)^2
    speed_denominator : Polynomial
        the sum of X_i^2
    is_line : bool
        whether the angular speed vanishes identically

    Methods
    -------
    angular_speed_squared()
        omega_p^2 = F / (sum X_i^2)^2 as a reduced RationalFunction
    cofactor(root)
        the stabilised factor of omega_p^2 at a zero
    evaluate(t)
        the point p(t)
    evaluate_omega(t)
        omega_p(t) >= 0
    multiplicity_profile()
        the zeros of omega_p on [0, 1] with multiplicities
    uniformity(tolerance)
        mean, variance and uniformity of omega_p by quadrature
    """

    def __init__(
        self, coordinates: Sequence[RationalFunction], *, root_tolerance: float = 1e-12
    ) -> None:
        if len(coordinates) < 2:
            raise ValueError("ParametricCurve@coordinates must have at least 2 entries")
        self._coordinates = tuple(coordinates)
        self._root_tolerance = root_tolerance

        derivatives = [x.derivative() for x in self._coordinates]
        w = reduce(lambda a, b: a.lcm(b), [d.denominator for d in derivatives])
        xs = [d.numerator * w.exquo(d.denominator) for d in derivatives]
        common = reduce(lambda a, b: a.gcd(b), xs + [w])
        if common.degree > 0:
            xs = [x.exquo(common) for x in xs]
            w = w.exquo(common)
        self._X = tuple(xs)
        self._W = w

        primes = [x.differentiate() for x in xs]
        n = len(xs)
        self._F = Polynomial()
        for i in range(n):
            for j in range(i + 1, n):
                minor = primes[i] * xs[j] - primes[j] * xs[i]
                self._F = self._F + minor * minor
        self._denom = Polynomial()
        for x in xs:
            self._denom = self._denom + x * x

        self._check_regular()
        self._omega_squared = RationalFunction(self._F, self._denom * self._denom)
        self._profile = None
        self._cofactors: Dict[IsolatedRoot, ZeroCofactor] = {}

    @classmethod
    def from_expressions(
        cls, expressions: Sequence[str], *, root_tolerance: float = 1e-12
    ) -> "ParametricCurve":
        """
        Parses coordinate expressions in t

        Parameters
        ----------
        expressions : Sequence[str]
            one expression per coordinate
            integers, fractions and decimals are read exactly; operators + - * / ^

        Raises
        ------
        ParseError
            if an expression is not a rational function of t
        """
        if isinstance(expressions, str) or len(expressions) < 2:
            raise ParseError(
                "ParametricCurve.from_expressions@expressions must list at least 2 coordinates"
            )
        coordinates = []
        for text in expressions:
            if not isinstance(text, str):
                raise ParseError(
                    f"ParametricCurve.from_expressions@expressions must be str, got {text!r}"
                )
            try:
                expression = parse_expr(
                    text, local_dict={"t": T}, transformations=TRANSFORMATIONS
                )
                stray = sympy.sympify(expression).free_symbols - {T}
                if stray:
                    raise ParseError(
                        f"Unknown symbol(s) {sorted(map(str, stray))} in {text!r}"
                    )
                coordinates.append(RationalFunction.from_expression(expression))
            except ParseError:
                raise
            except (
                SyntaxError,
                TypeError,
                ValueError,
                ZeroDivisionError,
                sympy.SympifyError,
                BasePolynomialError,
            ) as e:
                raise ParseError(f"Cannot read {text!r} as a rational function of t: {e}")
        return cls(coordinates, root_tolerance=root_tolerance)

    @property
    def coordinates(self) -> Tuple[RationalFunction, ...]:
        return self._coordinates

    @property
    def dimension(self) -> int:
        return len(self._coordinates)

    @property
    def hodograph(self) -> Tuple[Tuple[Polynomial, ...], Polynomial]:
        return self._X, self._W

    @property
    def F(self) -> Polynomial:
        return self._F

    @property
    def speed_denominator(self) -> Polynomial:
        return self._denom

    @property
    def is_line(self) -> bool:
        return self._F.is_zero

    def _check_regular(self) -> None:
        """Raises SingularCurve if sum X_i^2 has a real root in [0, 1]"""
        if self._denom.is_zero:
            raise SingularCurve(
                "ParametricCurve@coordinates describe a single point", bracket=(0, 1)
            )
        roots = self._denom.isolate_roots(0, 1, self._root_tolerance)
        if roots:
            root = roots[0]
            raise SingularCurve(
                f"ParametricCurve is not regular: the hodograph vanishes near t = {root.value:.12g}",
                bracket=(root.lower, root.upper),
            )

    def angular_speed_squared(self) -> RationalFunction:
        return self._omega_squared

    def evaluate(self, t: float) -> np.ndarray:
        """Returns the point p(t)"""
        return np.array([float(x(t)) for x in self._coordinates])

    def evaluate_omega(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """
        Returns omega_p(t), the nonnegative square root of angular_speed_squared

        Raises
        ------
        DomainError
            if any t lies outside [0, 1]
        """
        values = np.asarray(t, dtype=float)
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise DomainError("ParametricCurve.evaluate_omega@t must lie in [0, 1]")
        omega = np.sqrt(np.maximum(self._omega_squared(values), 0.0))
        return float(omega) if omega.ndim == 0 else omega

    def multiplicity_profile(self) -> AngularSpeedData:
        """
        Returns F, its denominator, zeta and the zeros of omega_p in [0, 1]

        Raises
        ------
        DegenerateLine
            if omega_p vanishes identically
        MalformedF
            if F has a root of odd multiplicity in [0, 1]
        """
        if self._profile is not None:
            return self._profile
        if self.is_line:
            raise DegenerateLine(
                "ParametricCurve.multiplicity_profile: the angular speed vanishes identically"
            )

        zeros = []
        factors = {}
        for root in self._F.isolate_roots(0, 1, self._root_tolerance):
            if root.multiplicity % 2:
                raise MalformedF(
                    f"F has a root of odd multiplicity {root.multiplicity} near t = {root.value:.12g}"
                )
            zeros.append(root.with_multiplicity(root.multiplicity // 2))
            # one square-free factor may carry several zeros
            factors[root.factor] = root.multiplicity
        zeta = self._F
        for factor, multiplicity in factors.items():
            zeta = zeta.exquo(factor**multiplicity)

        logger.debug(
            "zeros of omega: %s",
            [(round(z.value, 12), z.multiplicity) for z in zeros],
        )
        self._profile = AngularSpeedData(self._F, self._denom, zeta, zeros)
        return self._profile

    def cofactor(self, root: IsolatedRoot) -> ZeroCofactor:
        """Returns the stabilised factor of omega_p^2 at the zero @root, cached per root"""
        if root not in self._cofactors:
            omega_squared = self._omega_squared
            self._cofactors[root] = ZeroCofactor(
                root, omega_squared.numerator, omega_squared.denominator
            )
        return self._cofactors[root]

    def uniformity(self, tolerance: float = DEFAULT_TOLERANCE) -> UniformityReport:
        """
        Computes mu_p, sigma_p^2 and u_p by quadrature

        The integrals are split at the interior zeros of omega_p, where it has a kink

        Raises
        ------
        QuadratureError
            if an integral does not converge
        """
        if self.is_line:
            return UniformityReport.uniform()

        cuts = [0.0] + [
            z.value for z in self.multiplicity_profile().zero_factors if 0 < z.value < 1
        ] + [1.0]
        omega = Integrand(lambda t: float(np.sqrt(max(self._omega_squared(t), 0.0))))
        omega_squared = Integrand(lambda t: float(self._omega_squared(t)))

        mu, second, error = 0.0, 0.0, 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if not a < b:
                continue
            first = integrate(omega, a, b, tolerance)
            squared = integrate(omega_squared, a, b, tolerance)
            mu += first.value
            second += squared.value
            error += first.error_bound + squared.error_bound

        report = UniformityReport.from_moments(mu, second, error)
        logger.debug("mu = %.12g, u = %.12g", report.mu, report.uniformity)
        return report

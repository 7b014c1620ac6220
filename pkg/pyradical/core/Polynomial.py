import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, List, NamedTuple, Tuple, Union

import numpy as np
import sympy
from sympy import Poly, QQ, Rational, Symbol
from sympy.polys.polyerrors import ExactQuotientFailed

from .Errors import InexactDivision, ZeroPolynomial

logger = logging.getLogger(__name__)

T = Symbol("t")

# rational approximant used when a root has to stand in for an algebraic number
APPROXIMANT_EPS = Rational(1, 10**30)


def exact(value: Any) -> Rational:
    """
    Returns @value as an exact sympy Rational
    Floats are taken at their exact binary value, Fractions and strings are parsed exactly
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        return Rational(float(value))
    return Rational(value)


def _sign(value: Any) -> int:
    return (value > 0) - (value < 0)


class Polynomial:
    """
    An exact univariate polynomial in t with rational coefficients

    Parameters
    ----------
    coefficients : Iterable[Any] = ()
        the coefficients, indexed by the degree of their term
        anything `exact` accepts
        an empty sequence is the zero polynomial

    Properties
    ----------
    coefficients : List[Rational]
        the coefficients, index = degree, no trailing zeros
        the zero polynomial has no coefficients
    degree : int
        the degree, -1 for the zero polynomial
    is_zero : bool
        whether this is the zero polynomial
    poly : sympy.Poly
        the underlying QQ[t] polynomial

    Methods
    -------
    __call__(t)
        evaluates in binary floating point, works on numpy arrays
    differentiate()
        d/dt with exact coefficients
    euclidean_division(gamma, power)
        quotient and remainder of division by (t - gamma)^power
    euclidean_quotient(gamma, power)
        the quotient only
    evaluate_exact(x)
        exact value at a rational point
    gcd(), lcm(), exquo(), div()
        exact QQ[t] arithmetic
    isolate_roots(lower, upper, tolerance)
        certified real roots in [lower, upper] with multiplicities
    squarefree_decomposition()
        constant and pairwise coprime square-free factors with exponents
    """

    def __init__(self, coefficients: Iterable[Any] = ()) -> None:
        coefficients = [exact(c) for c in coefficients]
        self._poly = Poly(list(reversed(coefficients)) or [0], T, domain=QQ)
        self._floats = None

    @classmethod
    def from_poly(cls, poly: Poly) -> "Polynomial":
        """Wraps a sympy Poly in t, converting its domain to QQ"""
        new = cls.__new__(cls)
        new._poly = Poly(poly.as_expr(), T, domain=QQ)
        new._floats = None
        return new

    @classmethod
    def from_expression(cls, expression: Any) -> "Polynomial":
        """Builds the polynomial from a sympy expression in t"""
        return cls.from_poly(Poly(expression, T, domain=QQ))

    @classmethod
    def linear(cls, root: Any) -> "Polynomial":
        """Returns t - @root"""
        return cls([-exact(root), 1])

    @property
    def poly(self) -> Poly:
        return self._poly

    @property
    def coefficients(self) -> List[Rational]:
        if self.is_zero:
            return []
        return [sympy.Rational(c) for c in reversed(self._poly.all_coeffs())]

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else int(self._poly.degree())

    @property
    def is_zero(self) -> bool:
        return bool(self._poly.is_zero)

    @property
    def leading_coefficient(self) -> Rational:
        return sympy.Rational(self._poly.LC())

    def __repr__(self) -> str:
        return f"Polynomial({self._poly.as_expr()})"

    def __str__(self) -> str:
        return str(self._poly.as_expr())

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial([other])
            except (TypeError, ValueError):
                return NotImplemented
        return self.coefficients == other.coefficients

    def _wrap(self, other: Any) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other: Any) -> "Polynomial":
        return Polynomial.from_poly(self._poly + self._wrap(other)._poly)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Polynomial":
        return Polynomial.from_poly(self._poly - self._wrap(other)._poly)

    def __rsub__(self, other: Any) -> "Polynomial":
        return self._wrap(other) - self

    def __mul__(self, other: Any) -> "Polynomial":
        return Polynomial.from_poly(self._poly * self._wrap(other)._poly)

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return Polynomial.from_poly(-self._poly)

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, int) or power < 0:
            raise ValueError("Polynomial.__pow__@power must be a nonnegative int")
        return Polynomial.from_poly(self._poly**power)

    def __call__(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        if self._floats is None:
            self._floats = np.array(
                [float(c) for c in self._poly.all_coeffs()], dtype=float
            )
        return np.polyval(self._floats, t)

    def evaluate_exact(self, x: Any) -> Rational:
        return sympy.Rational(self._poly.eval(exact(x)))

    def differentiate(self) -> "Polynomial":
        return Polynomial.from_poly(self._poly.diff(T))

    def div(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroPolynomial("Polynomial.div@other must not be the zero polynomial")
        q, r = self._poly.div(other._poly)
        return Polynomial.from_poly(q), Polynomial.from_poly(r)

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact division, raises InexactDivision if @other does not divide self"""
        if other.is_zero:
            raise ZeroPolynomial("Polynomial.exquo@other must not be the zero polynomial")
        try:
            return Polynomial.from_poly(self._poly.exquo(other._poly))
        except ExactQuotientFailed:
            raise InexactDivision(f"Polynomial.exquo@other must divide {self}, got {other}")

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """The monic greatest common divisor"""
        return Polynomial.from_poly(self._poly.gcd(other._poly))

    def lcm(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_poly(self._poly.lcm(other._poly))

    def squarefree_decomposition(self) -> "SquarefreeDecomposition":
        """
        Returns the constant and the square-free factors of self

        The factors are monic, pairwise coprime and square-free, and
            constant * prod(factor ** exponent) == self

        Raises
        ------
        ZeroPolynomial
            if self is the zero polynomial
        """
        if self.is_zero:
            raise ZeroPolynomial(
                "Polynomial.squarefree_decomposition@f must not be the zero polynomial"
            )
        constant, factors = self._poly.sqf_list()
        return SquarefreeDecomposition(
            sympy.Rational(constant),
            [(Polynomial.from_poly(f), int(k)) for f, k in factors],
        )

    def isolate_roots(
        self, lower: Any = 0, upper: Any = 1, tolerance: float = 1e-12
    ) -> List["IsolatedRoot"]:
        """
        Returns one IsolatedRoot per distinct real root in the closed interval [lower, upper]

        Parameters
        ----------
        lower : Any = 0
        upper : Any = 1
            the interval, converted with `exact`
            roots at the endpoints count
        tolerance : float = 1e-12
            the bracket width of each returned root, and so the accuracy of its float value

        Returns
        -------
        List[IsolatedRoot]
            sorted ascending, multiplicities from squarefree_decomposition

        Raises
        ------
        ZeroPolynomial
            if self is the zero polynomial
        ValueError
            if @lower > @upper or @tolerance is not positive
        """
        if self.is_zero:
            raise ZeroPolynomial(
                "Polynomial.isolate_roots@f must not be the zero polynomial"
            )
        lower, upper = exact(lower), exact(upper)
        if lower > upper:
            raise ValueError("Polynomial.isolate_roots@lower must not exceed upper")
        if not tolerance > 0:
            raise ValueError("Polynomial.isolate_roots@tolerance must be positive")

        eps = exact(tolerance)
        roots = []
        for factor, multiplicity in self.squarefree_decomposition().factors:
            if factor.degree < 1:
                continue
            for bracket in factor._poly.intervals(eps=eps):
                (s, t), _ = bracket
                clipped = factor._clip(sympy.Rational(s), sympy.Rational(t), lower, upper)
                if clipped is not None:
                    roots.append(
                        IsolatedRoot(
                            factor=factor,
                            lower=clipped[0],
                            upper=clipped[1],
                            value=float((clipped[0] + clipped[1]) / 2),
                            multiplicity=multiplicity,
                            bracket=clipped[2],
                        )
                    )

        roots.sort(key=lambda r: r.value)
        logger.debug("isolated %d root(s) of %s in [%s, %s]", len(roots), self, lower, upper)
        return roots

    def _clip(
        self, s: Rational, t: Rational, lower: Rational, upper: Rational
    ) -> Union[None, Tuple[Rational, Rational, Tuple[Rational, Rational]]]:
        """
        Restricts an isolating bracket [s, t] of a square-free self to [lower, upper]
        Returns None if its root lies outside, else (lo, hi, refinable bracket)
        """
        f = self.evaluate_exact
        if s == t or f(s) == 0:
            return (s, s, (s, s)) if lower <= s <= upper else None
        if f(t) == 0:
            return (t, t, (t, t)) if lower <= t <= upper else None

        # the root is strictly inside (s, t)
        if t <= lower or s >= upper:
            return None
        lo, hi = s, t
        for end, keep_above in ((lower, True), (upper, False)):
            if not lo < end < hi:
                continue
            value = f(end)
            if value == 0:
                return (end, end, (end, end))
            root_above = _sign(value) == _sign(f(s))
            if root_above != keep_above:
                return None
            if keep_above:
                lo = end
            else:
                hi = end
        return (lo, hi, (s, t))

    def euclidean_division(self, gamma: Any, power: int) -> "EuclideanDivision":
        """
        Divides self by (t - gamma)^power

        Returns
        -------
        EuclideanDivision
            quotient Q and remainder R with self = (t - gamma)^power * Q + R
            residual = max |R coefficient| / max |self coefficient|,
            which vanishes when gamma is a root of multiplicity >= power
        """
        if not isinstance(power, int) or power < 1:
            raise ValueError("Polynomial.euclidean_division@power must be a positive int")
        divisor = Polynomial.linear(gamma) ** power
        quotient, remainder = self.div(divisor)

        scale = max((abs(c) for c in self.coefficients), default=0)
        size = max((abs(c) for c in remainder.coefficients), default=0)
        residual = float(size / scale) if scale else 0.0
        return EuclideanDivision(quotient, remainder, residual)

    def euclidean_quotient(self, gamma: Any, power: int) -> "Polynomial":
        return self.euclidean_division(gamma, power).quotient


class SquarefreeDecomposition(NamedTuple):
    constant: Rational
    factors: List[Tuple[Polynomial, int]]

    def expand(self) -> Polynomial:
        """Multiplies the decomposition back out"""
        return reduce(
            lambda acc, fk: acc * fk[0] ** fk[1], self.factors, Polynomial([self.constant])
        )


class EuclideanDivision(NamedTuple):
    quotient: Polynomial
    remainder: Polynomial
    residual: float


@dataclass(frozen=True)
class IsolatedRoot:
    """
    A real root of a polynomial, certified by an exact bracket

    Properties
    ----------
    factor : Polynomial
        the square-free factor the root belongs to
    lower, upper : Rational
        the bracket, which contains exactly this root of @factor
        equal when the root is rational and was found exactly
    value : float
        the midpoint of the bracket
    multiplicity : int
        multiplicity in the polynomial the root was isolated from
        ParametricCurve.multiplicity_profile rescales it to the angular speed
    bracket : Tuple[Rational, Rational]
        the isolating interval sympy can refine, which may extend past [lower, upper]
    """

    factor: Polynomial
    lower: Rational
    upper: Rational
    value: float
    multiplicity: int
    bracket: Tuple[Rational, Rational]

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValueError("IsolatedRoot@multiplicity must be at least 1")
        if self.lower > self.upper:
            raise ValueError("IsolatedRoot@lower must not exceed upper")

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def refine(self, eps: Any) -> "IsolatedRoot":
        """Returns the same root with a bracket narrower than @eps"""
        if self.is_exact or self.upper - self.lower < exact(eps):
            return self
        s, t = self.factor.poly.refine_root(*self.bracket, eps=exact(eps))
        s, t = sympy.Rational(s), sympy.Rational(t)
        lower, upper = max(s, self.lower), min(t, self.upper)
        return replace(
            self,
            lower=lower,
            upper=upper,
            value=float((lower + upper) / 2),
            bracket=(s, t),
        )

    def approximant(self, eps: Any = APPROXIMANT_EPS) -> Rational:
        """An exact rational within @eps of the root, the root itself when it is rational"""
        if self.is_exact:
            return self.lower
        root = self.refine(eps)
        return (root.lower + root.upper) / 2

    def with_multiplicity(self, multiplicity: int) -> "IsolatedRoot":
        return replace(self, multiplicity=multiplicity)


class RationalFunction:
    """
    An exact rational function numerator / denominator in t, kept in reduced form

    Parameters
    ----------
    numerator : Polynomial
    denominator : Polynomial = 1
        must not be the zero polynomial

    Properties
    ----------
    numerator, denominator : Polynomial
        coprime, with a monic denominator

    Methods
    -------
    __call__(t)
        evaluates in binary floating point
    derivative()
        the exact derivative, reduced
    """

    def __init__(self, numerator: Polynomial, denominator: Polynomial = None) -> None:
        if denominator is None:
            denominator = Polynomial([1])
        if denominator.is_zero:
            raise ZeroPolynomial(
                "RationalFunction@denominator must not be the zero polynomial"
            )
        common = numerator.gcd(denominator)
        if not numerator.is_zero and common.degree > 0:
            numerator, denominator = numerator.exquo(common), denominator.exquo(common)
        if numerator.is_zero:
            denominator = Polynomial([1])
        lead = denominator.leading_coefficient
        self._numerator = numerator * (1 / lead)
        self._denominator = denominator * (1 / lead)

    @classmethod
    def from_expression(cls, expression: Any) -> "RationalFunction":
        """Builds the function from a sympy expression that is rational in t"""
        numerator, denominator = sympy.fraction(sympy.cancel(sympy.together(expression)))
        return cls(
            Polynomial.from_expression(numerator), Polynomial.from_expression(denominator)
        )

    @property
    def numerator(self) -> Polynomial:
        return self._numerator

    @property
    def denominator(self) -> Polynomial:
        return self._denominator

    @property
    def is_zero(self) -> bool:
        return self._numerator.is_zero

    def __repr__(self) -> str:
        return f"RationalFunction(({self._numerator}) / ({self._denominator}))"

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (
            self.numerator == other.numerator and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self._numerator, self._denominator))

    def __call__(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return self._numerator(t) / self._denominator(t)

    def derivative(self) -> "RationalFunction":
        n, d = self._numerator, self._denominator
        return RationalFunction(
            n.differentiate() * d - n * d.differentiate(), d * d
        )

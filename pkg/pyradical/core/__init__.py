"""
A set of layered models for optimal piecewise radical reparameterization of rational curves

Polynomial and Quadrature hold no curve knowledge
ParametricCurve is built on Polynomial, everything else on ParametricCurve

Layering
--------
Polynomial, RationalFunction, IsolatedRoot	- Quadrature
	ParametricCurve							<- curve dependency begins
		Partition
			PiecewiseTransform
				RadicalOptimizer
"""

from .Errors import (
    DegenerateLine,
    DegeneratePiece,
    DomainError,
    IllConditionedRoot,
    InexactDivision,
    InvalidAlpha,
    InvalidBreakpoints,
    MalformedF,
    ParseError,
    PieceMismatch,
    QuadratureError,
    RadicalError,
    SingularCurve,
    SingularDerivative,
    ZeroPolynomial,
)
from .Polynomial import IsolatedRoot, Polynomial, RationalFunction
from .Quadrature import Integrand, QuadratureResult, integrate

from .ParametricCurve import AngularSpeedData, ParametricCurve, UniformityReport, ZeroCofactor
from .Partition import Partition, PieceKind, omega_prime_numerator
from .PiecewiseTransform import ComposedPiece, MoebiusPiece, PiecewiseTransform, RadicalPiece
from .Optimizer import (
    OptimizationResult,
    PieceIntegrals,
    RadicalOptimizer,
    moebius_eta,
    optimal_alpha_Z,
)

import logging
from bisect import bisect_right
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .Errors import (
    DomainError,
    InvalidAlpha,
    InvalidBreakpoints,
    PieceMismatch,
    SingularDerivative,
)
from .ParametricCurve import ParametricCurve, UniformityReport
from .Partition import Partition, PieceKind
from .Polynomial import IsolatedRoot
from .Quadrature import DEFAULT_TOLERANCE, integrate

logger = logging.getLogger(__name__)

# endpoint agreement required between neighbouring pieces
CONTINUITY_TOLERANCE = 1e-12

# a transform zero must sit this close to a root of omega_p
ROOT_MATCH_TOLERANCE = 1e-9


def normalized_inverse(
    kind: PieceKind, exponent_root: int, t_tilde: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    The normalised inverse of a radical piece, s~ as a function of t~ on [0, 1]

    left_zero: t~^k, right_zero: 1 - (1 - t~)^k, plain: t~, with k = exponent_root
    """
    if kind is PieceKind.LEFT_ZERO:
        return t_tilde**exponent_root
    if kind is PieceKind.RIGHT_ZERO:
        return 1.0 - (1.0 - t_tilde) ** exponent_root
    return t_tilde


def check_breakpoints(points: Sequence[float], name: str, length: Optional[int] = None) -> Tuple[float, ...]:
    """Validates a breakpoint sequence: strictly increasing from exactly 0 to exactly 1"""
    points = tuple(float(p) for p in points)
    if length is not None and len(points) != length:
        raise InvalidBreakpoints(f"{name} must have {length} entries, got {len(points)}")
    if len(points) < 2:
        raise InvalidBreakpoints(f"{name} must have at least 2 entries")
    if points[0] != 0.0 or points[-1] != 1.0:
        raise InvalidBreakpoints(f"{name} must start at 0 and end at 1")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise InvalidBreakpoints(f"{name} must be strictly increasing")
    return points


def _normalize(x: float, lo: float, hi: float) -> float:
    return min(max((x - lo) / (hi - lo), 0.0), 1.0)


def _denormalize(x_tilde: float, lo: float, hi: float) -> float:
    if x_tilde <= 0.0:
        return lo
    if x_tilde >= 1.0:
        return hi
    return lo + (hi - lo) * x_tilde


@dataclass(frozen=True)
class RadicalPiece:
    """
    One piece of an elementary piecewise radical transformation, [s_lo, s_hi] -> [t_lo, t_hi]

    left_zero   t = t_lo + dt * s~^(1/k)
    right_zero  t = t_lo + dt * (1 - (1 - s~)^(1/k))
    plain       t = t_lo + dt * s~
    with s~ = (s - s_lo) / ds and k = exponent_root = mu + 1, 1 on plain pieces
    """

    kind: PieceKind
    t_lo: float
    t_hi: float
    s_lo: float
    s_hi: float
    exponent_root: int = 1

    def __post_init__(self) -> None:
        if not self.t_lo < self.t_hi:
            raise InvalidBreakpoints("RadicalPiece@t_lo must be less than t_hi")
        if not self.s_lo < self.s_hi:
            raise InvalidBreakpoints("RadicalPiece@s_lo must be less than s_hi")
        if self.exponent_root < 1:
            raise ValueError("RadicalPiece@exponent_root must be at least 1")
        if (self.exponent_root == 1) != (self.kind is PieceKind.PLAIN):
            raise ValueError("RadicalPiece@exponent_root must be 1 exactly on plain pieces")

    @property
    def domain(self) -> Tuple[float, float]:
        return self.s_lo, self.s_hi

    @property
    def image(self) -> Tuple[float, float]:
        return self.t_lo, self.t_hi

    @property
    def dt(self) -> float:
        return self.t_hi - self.t_lo

    @property
    def ds(self) -> float:
        return self.s_hi - self.s_lo

    def __call__(self, s: float) -> float:
        s_tilde = _normalize(s, self.s_lo, self.s_hi)
        k = self.exponent_root
        if self.kind is PieceKind.LEFT_ZERO:
            t_tilde = s_tilde ** (1.0 / k)
        elif self.kind is PieceKind.RIGHT_ZERO:
            t_tilde = 1.0 - (1.0 - s_tilde) ** (1.0 / k)
        else:
            t_tilde = s_tilde
        return _denormalize(t_tilde, self.t_lo, self.t_hi)

    def derivative(self, s: float) -> float:
        """
        Raises
        ------
        SingularDerivative
            at the zero end of a radical piece, where the derivative diverges
        """
        s_tilde = _normalize(s, self.s_lo, self.s_hi)
        k = self.exponent_root
        scale = self.dt / self.ds
        if self.kind is PieceKind.LEFT_ZERO:
            if s_tilde == 0.0:
                raise SingularDerivative(f"RadicalPiece.derivative diverges at s = {self.s_lo}")
            return scale / k * s_tilde ** (1.0 / k - 1.0)
        if self.kind is PieceKind.RIGHT_ZERO:
            if s_tilde == 1.0:
                raise SingularDerivative(f"RadicalPiece.derivative diverges at s = {self.s_hi}")
            return scale / k * (1.0 - s_tilde) ** (1.0 / k - 1.0)
        return scale

    def inverse(self, t: float) -> float:
        t_tilde = _normalize(t, self.t_lo, self.t_hi)
        return _denormalize(
            normalized_inverse(self.kind, self.exponent_root, t_tilde), self.s_lo, self.s_hi
        )

    def describe(self) -> Dict[str, Any]:
        """
        Closed form in s
        left_zero t = t_lo + c (s - s_lo)^(1/k), right_zero t = t_hi - c (s_hi - s)^(1/k),
        plain t = a + b s
        """
        if self.kind is PieceKind.PLAIN:
            slope = self.dt / self.ds
            coefficients = {"a": self.t_lo - slope * self.s_lo, "b": slope}
        else:
            coefficients = {
                "c": self.dt / self.ds ** (1.0 / self.exponent_root),
                "s_lo": self.s_lo,
                "s_hi": self.s_hi,
                "t_lo": self.t_lo,
                "t_hi": self.t_hi,
            }
        return {
            "domain": [self.s_lo, self.s_hi],
            "kind": "affine" if self.kind is PieceKind.PLAIN else f"radical-{self.kind.value}",
            "radical_index": self.exponent_root,
            "coefficients": coefficients,
        }


@dataclass(frozen=True)
class MoebiusPiece:
    """
    One piece of a piecewise Moebius transformation, [z_lo, z_hi] -> [s_lo, s_hi]

    s~ = (1 - alpha) z~ / ((1 - alpha) z~ + alpha (1 - z~)), 0 < alpha < 1
    alpha = 1/2 is the affine map
    """

    z_lo: float
    z_hi: float
    s_lo: float
    s_hi: float
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if not self.z_lo < self.z_hi:
            raise InvalidBreakpoints("MoebiusPiece@z_lo must be less than z_hi")
        if not self.s_lo < self.s_hi:
            raise InvalidBreakpoints("MoebiusPiece@s_lo must be less than s_hi")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidAlpha(f"MoebiusPiece@alpha must lie in (0, 1), got {self.alpha}")

    @property
    def domain(self) -> Tuple[float, float]:
        return self.z_lo, self.z_hi

    @property
    def image(self) -> Tuple[float, float]:
        return self.s_lo, self.s_hi

    def __call__(self, z: float) -> float:
        z_tilde = _normalize(z, self.z_lo, self.z_hi)
        a = self.alpha
        s_tilde = (1.0 - a) * z_tilde / ((1.0 - a) * z_tilde + a * (1.0 - z_tilde))
        return _denormalize(s_tilde, self.s_lo, self.s_hi)

    def derivative(self, z: float) -> float:
        z_tilde = _normalize(z, self.z_lo, self.z_hi)
        a = self.alpha
        denominator = (1.0 - a) * z_tilde + a * (1.0 - z_tilde)
        return (self.s_hi - self.s_lo) / (self.z_hi - self.z_lo) * a * (1.0 - a) / denominator**2

    def inverse(self, s: float) -> float:
        s_tilde = _normalize(s, self.s_lo, self.s_hi)
        a = self.alpha
        z_tilde = a * s_tilde / (a * s_tilde + (1.0 - a) * (1.0 - s_tilde))
        return _denormalize(z_tilde, self.z_lo, self.z_hi)

    def coefficients(self) -> Dict[str, float]:
        """s = (a z + b) / (c z + d)"""
        a, dz, ds = self.alpha, self.z_hi - self.z_lo, self.s_hi - self.s_lo
        c = 1.0 - 2.0 * a
        d = a * dz - c * self.z_lo
        return {
            "a": self.s_lo * c + ds * (1.0 - a),
            "b": self.s_lo * d - ds * (1.0 - a) * self.z_lo,
            "c": c,
            "d": d,
        }

    def describe(self) -> Dict[str, Any]:
        return {
            "domain": [self.z_lo, self.z_hi],
            "kind": "moebius-affine" if self.alpha == 0.5 else "moebius",
            "radical_index": 1,
            "alpha": self.alpha,
            "coefficients": self.coefficients(),
        }


@dataclass(frozen=True)
class ComposedPiece:
    """A radical piece after a Moebius piece, z -> radical(moebius(z))"""

    radical: RadicalPiece
    moebius: MoebiusPiece

    def __post_init__(self) -> None:
        if any(
            abs(x - y) > CONTINUITY_TOLERANCE
            for x, y in zip(self.moebius.image, self.radical.domain)
        ):
            raise PieceMismatch(
                "ComposedPiece@moebius must map onto the domain of radical, "
                f"got {self.moebius.image} and {self.radical.domain}"
            )

    @property
    def domain(self) -> Tuple[float, float]:
        return self.moebius.domain

    @property
    def image(self) -> Tuple[float, float]:
        return self.radical.image

    def __call__(self, z: float) -> float:
        return self.radical(self.moebius(z))

    def derivative(self, z: float) -> float:
        return self.radical.derivative(self.moebius(z)) * self.moebius.derivative(z)

    def inverse(self, t: float) -> float:
        return self.moebius.inverse(self.radical.inverse(t))

    def describe(self) -> Dict[str, Any]:
        radical = self.radical.describe()
        return {
            "domain": [self.moebius.z_lo, self.moebius.z_hi],
            "kind": f"{radical['kind']}-moebius",
            "radical_index": self.radical.exponent_root,
            "alpha": self.moebius.alpha,
            "coefficients": {
                "radical": radical["coefficients"],
                "moebius": self.moebius.coefficients(),
            },
        }


Piece = Union[RadicalPiece, MoebiusPiece, ComposedPiece]


class PiecewiseTransform:
    """
    A continuous, strictly increasing bijection of [0, 1] made of pieces

    Parameters
    ----------
    pieces : Sequence[Piece]
        contiguous pieces whose domains and images tile [0, 1] in order

    Properties
    ----------
    pieces : Tuple[Piece]
    breakpoints : Tuple[float]
        the piece boundaries in the domain
    image_breakpoints : Tuple[float]
        the piece boundaries in the image
    is_identity : bool

    Methods
    -------
    build_radical(partition, S)
        phi, mapping S onto T piece by piece
    build_moebius(S, Z, alpha)
        m, mapping Z onto S piece by piece
    compose(phi, m)
        r = phi o m
    identity()
    evaluate(x)
    evaluate_derivative(x, side)
    inverse(y)
    reparameterized_omega(curve, x)
        the angular speed of curve o self, finite at the zeros of omega_p
    uniformity(curve, tolerance)
        u of curve o self by quadrature
    describe()
        JSON-ready closed forms of every piece
    """

    def __init__(self, pieces: Sequence[Piece]) -> None:
        pieces = tuple(pieces)
        if not pieces:
            raise InvalidBreakpoints("PiecewiseTransform@pieces must not be empty")
        if pieces[0].domain[0] != 0.0 or pieces[-1].domain[1] != 1.0:
            raise InvalidBreakpoints("PiecewiseTransform@pieces must cover [0, 1]")
        if pieces[0].image[0] != 0.0 or pieces[-1].image[1] != 1.0:
            raise InvalidBreakpoints("PiecewiseTransform@pieces must map onto [0, 1]")
        for left, right in zip(pieces, pieces[1:]):
            if left.domain[1] != right.domain[0]:
                raise InvalidBreakpoints("PiecewiseTransform@pieces must be contiguous")
            if abs(left.image[1] - right.image[0]) > CONTINUITY_TOLERANCE:
                raise InvalidBreakpoints("PiecewiseTransform@pieces must be continuous")
        self._pieces = pieces
        self._breakpoints = tuple(p.domain[0] for p in pieces) + (1.0,)
        self._image_breakpoints = tuple(p.image[0] for p in pieces) + (1.0,)

    @classmethod
    def identity(cls) -> "PiecewiseTransform":
        return cls([RadicalPiece(PieceKind.PLAIN, 0.0, 1.0, 0.0, 1.0)])

    @classmethod
    def build_radical(cls, partition: Partition, S: Sequence[float]) -> "PiecewiseTransform":
        """
        Raises
        ------
        InvalidBreakpoints
            if S does not match T in length or is not increasing from 0 to 1
        """
        S = check_breakpoints(S, "PiecewiseTransform.build_radical@S", len(partition.t_points))
        T = partition.t_points
        pieces = []
        for i in range(partition.piece_count):
            kind, mu, _ = partition.adjacent_zero(i)
            pieces.append(RadicalPiece(kind, T[i], T[i + 1], S[i], S[i + 1], mu + 1))
        return cls(pieces)

    @classmethod
    def build_moebius(
        cls, S: Sequence[float], Z: Sequence[float], alpha: Sequence[float]
    ) -> "PiecewiseTransform":
        """
        Raises
        ------
        InvalidBreakpoints
            if S or Z is malformed or their lengths differ
        InvalidAlpha
            if alpha has the wrong length or an entry outside (0, 1)
        """
        S = check_breakpoints(S, "PiecewiseTransform.build_moebius@S")
        Z = check_breakpoints(Z, "PiecewiseTransform.build_moebius@Z", len(S))
        alpha = tuple(float(a) for a in alpha)
        if len(alpha) != len(S) - 1:
            raise InvalidAlpha(
                f"PiecewiseTransform.build_moebius@alpha must have {len(S) - 1} entries"
            )
        return cls(
            [
                MoebiusPiece(Z[i], Z[i + 1], S[i], S[i + 1], alpha[i])
                for i in range(len(alpha))
            ]
        )

    @classmethod
    def compose(cls, phi: "PiecewiseTransform", m: "PiecewiseTransform") -> "PiecewiseTransform":
        """
        Returns r = phi o m

        Raises
        ------
        PieceMismatch
            if the image breakpoints of m are not the breakpoints of phi
        """
        if phi.is_identity:
            return m
        if m.is_identity:
            return phi
        if len(phi.pieces) != len(m.pieces):
            raise PieceMismatch("PiecewiseTransform.compose@m must have one piece per piece of phi")
        pieces = []
        for outer, inner in zip(phi.pieces, m.pieces):
            if not isinstance(outer, RadicalPiece) or not isinstance(inner, MoebiusPiece):
                raise PieceMismatch(
                    "PiecewiseTransform.compose composes radical pieces after Moebius pieces"
                )
            pieces.append(ComposedPiece(outer, inner))
        return cls(pieces)

    @property
    def pieces(self) -> Tuple[Piece, ...]:
        return self._pieces

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return self._breakpoints

    @property
    def image_breakpoints(self) -> Tuple[float, ...]:
        return self._image_breakpoints

    @property
    def is_identity(self) -> bool:
        if len(self._pieces) != 1:
            return False
        piece = self._pieces[0]
        if isinstance(piece, RadicalPiece):
            return piece.kind is PieceKind.PLAIN
        return isinstance(piece, MoebiusPiece) and piece.alpha == 0.5

    def __repr__(self) -> str:
        return f"PiecewiseTransform(breakpoints={self._breakpoints})"

    def _check_domain(self, x: float, name: str) -> None:
        if not 0.0 <= x <= 1.0:
            raise DomainError(f"PiecewiseTransform.{name}@x must lie in [0, 1], got {x}")

    def locate(self, x: float, side: str = "right") -> int:
        """
        The index of the piece used at x
        At a shared breakpoint side='right' picks the piece to the right, except at x = 1
        """
        if side not in ("left", "right"):
            raise ValueError("PiecewiseTransform.locate@side must be 'left' or 'right'")
        last = len(self._pieces) - 1
        index = min(bisect_right(self._breakpoints, x) - 1, last)
        if side == "left" and index > 0 and x == self._breakpoints[index]:
            index -= 1
        return max(index, 0)

    def evaluate(self, x: float) -> float:
        self._check_domain(x, "evaluate")
        return self._pieces[self.locate(x)](x)

    def evaluate_derivative(self, x: float, side: str = "right") -> float:
        """
        The one-sided derivative at x, taken from the piece on @side of a breakpoint

        Raises
        ------
        SingularDerivative
            at the zero end of a radical piece
        """
        self._check_domain(x, "evaluate_derivative")
        return self._pieces[self.locate(x, side)].derivative(x)

    def inverse(self, y: float) -> float:
        """The preimage of y, piece by piece through the closed-form inverses"""
        self._check_domain(y, "inverse")
        last = len(self._pieces) - 1
        index = min(bisect_right(self._image_breakpoints, y) - 1, last)
        return self._pieces[max(index, 0)].inverse(y)

    def describe(self) -> List[Dict[str, Any]]:
        return [piece.describe() for piece in self._pieces]

    def reparameterized_omega(self, curve: ParametricCurve, x: float, side: str = "right") -> float:
        """
        omega of curve o self at x

        Radical pieces use the cancelled form dt^(mu+1) / ((mu+1) ds) * zeta~(t),
        where zeta~(t) = omega_p(t) / |t - t_i|^mu, which stays finite at the zero t_i

        Raises
        ------
        DomainError
            if x lies outside [0, 1]
        PieceMismatch
            if a radical piece has no zero of omega_p at its singular end
        """
        self._check_domain(x, "reparameterized_omega")
        return self._piece_omega(curve, self._pieces[self.locate(x, side)], x)

    def _piece_omega(self, curve: ParametricCurve, piece: Piece, x: float) -> float:
        if isinstance(piece, ComposedPiece):
            s = piece.moebius(x)
            return self._piece_omega(curve, piece.radical, s) * piece.moebius.derivative(x)
        if isinstance(piece, MoebiusPiece):
            return curve.evaluate_omega(piece(x)) * piece.derivative(x)
        if piece.kind is PieceKind.PLAIN:
            return curve.evaluate_omega(piece(x)) * piece.dt / piece.ds

        mu = piece.exponent_root - 1
        zero = piece.t_lo if piece.kind is PieceKind.LEFT_ZERO else piece.t_hi
        root = _matching_zero(curve, zero)
        if root.multiplicity != mu:
            raise PieceMismatch(
                f"radical index {piece.exponent_root} does not match the zero of "
                f"multiplicity {root.multiplicity} at t = {zero:.12g}"
            )
        cofactor = curve.cofactor(root)
        return piece.dt**piece.exponent_root / (piece.exponent_root * piece.ds) * float(
            cofactor(piece(x))
        )

    def uniformity(
        self, curve: ParametricCurve, tolerance: float = DEFAULT_TOLERANCE
    ) -> UniformityReport:
        """
        Computes mu, sigma^2 and u of curve o self by quadrature over each piece
        """
        if curve.is_line:
            return UniformityReport.uniform()
        mu, second, error = 0.0, 0.0, 0.0
        for piece in self._pieces:
            lo, hi = piece.domain

            def omega(x: float, piece: Piece = piece) -> float:
                return self._piece_omega(curve, piece, x)

            first = integrate(omega, lo, hi, tolerance)
            squared = integrate(lambda x: omega(x) ** 2, lo, hi, tolerance)
            mu += first.value
            second += squared.value
            error += first.error_bound + squared.error_bound
        return UniformityReport.from_moments(mu, second, error)


def _matching_zero(curve: ParametricCurve, t: float) -> IsolatedRoot:
    for root in curve.multiplicity_profile().zero_factors:
        if abs(root.value - t) <= ROOT_MATCH_TOLERANCE:
            return root
    raise PieceMismatch(f"omega_p has no zero at t = {t:.12g} to cancel")

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .Errors import DegeneratePiece, IllConditionedRoot
from .ParametricCurve import ParametricCurve
from .Partition import Partition, PieceKind
from .PiecewiseTransform import check_breakpoints, normalized_inverse
from .Polynomial import IsolatedRoot
from .Quadrature import DEFAULT_TOLERANCE, QuadratureResult, integrate

logger = logging.getLogger(__name__)

# weights in s~ of the integrals L, A, B and C
WEIGHTS = {
    "L": lambda s: 1.0,
    "A": lambda s: (1.0 - s) ** 2,
    "B": lambda s: 2.0 * s * (1.0 - s),
    "C": lambda s: s**2,
}


@dataclass(frozen=True)
class PieceIntegrals:
    """
    Per-piece integrals behind the optimal breakpoints and Moebius parameters

    Properties
    ----------
    L : Tuple[float]
        L_k = dt_k * integral over the piece of omega_p^2 / phi_k^-1' in normalised form
    A, B, C : Tuple[float]
        the same integrand weighted by (1 - s~)^2, 2 s~ (1 - s~) and s~^2, times dt_k / ds_k
    M : Tuple[float]
        M_k = ds_k (2 sqrt(A_k C_k) + B_k), which does not depend on S
    """

    L: Tuple[float, ...]
    A: Tuple[float, ...]
    B: Tuple[float, ...]
    C: Tuple[float, ...]
    M: Tuple[float, ...]

    @classmethod
    def from_abc(
        cls,
        L: Sequence[float],
        A: Sequence[float],
        B: Sequence[float],
        C: Sequence[float],
        S: Sequence[float],
    ) -> "PieceIntegrals":
        M = [
            (S[i + 1] - S[i]) * (2.0 * np.sqrt(A[i] * C[i]) + B[i])
            for i in range(len(A))
        ]
        return cls(tuple(L), tuple(A), tuple(B), tuple(C), tuple(float(m) for m in M))


@dataclass(frozen=True)
class OptimizationResult:
    """
    Optimal S, Z and alpha with the uniformities they reach

    Properties
    ----------
    S_star, Z_star : Tuple[float]
    alpha_star : Tuple[float]
    u_after_phi : float
        mu_p^2 / (sum sqrt L_k)^2
    u_after_m : float
        mu_p^2 / (sum sqrt M_k)^2
    eta_phi, eta_m : float
        the minimised integrals, (sum sqrt L_k)^2 and (sum sqrt M_k)^2
    integrals : PieceIntegrals
    mu_p : float
    """

    S_star: Tuple[float, ...]
    Z_star: Tuple[float, ...]
    alpha_star: Tuple[float, ...]
    u_after_phi: float
    u_after_m: float
    eta_phi: float
    eta_m: float
    integrals: Optional[PieceIntegrals] = None
    mu_p: float = 0.0


def _cumulative_breakpoints(weights: Sequence[float]) -> Tuple[float, ...]:
    total = float(np.sum(weights))
    partial = np.cumsum(weights)[:-1] / total
    return (0.0,) + tuple(float(p) for p in partial) + (1.0,)


def optimal_alpha_Z(
    integrals: PieceIntegrals, S: Sequence[float], mu_p: float
) -> OptimizationResult:
    """
    alpha_k = 1 / (1 + sqrt(C_k / A_k)) and z_k = sum_{j<k} sqrt M_j / sum sqrt M_j

    Raises
    ------
    DegeneratePiece
        if an A_k or C_k is not positive
    """
    A, C = np.asarray(integrals.A), np.asarray(integrals.C)
    if np.any(A <= 0) or np.any(C <= 0):
        raise DegeneratePiece("optimal_alpha_Z@integrals must have positive A and C")
    alpha = tuple(float(a) for a in 1.0 / (1.0 + np.sqrt(C / A)))

    root_L = np.sqrt(integrals.L)
    root_M = np.sqrt(integrals.M)
    eta_phi = float(np.sum(root_L) ** 2)
    eta_m = float(np.sum(root_M) ** 2)
    return OptimizationResult(
        S_star=tuple(float(s) for s in S),
        Z_star=_cumulative_breakpoints(root_M),
        alpha_star=alpha,
        u_after_phi=min(mu_p**2 / eta_phi, 1.0),
        u_after_m=min(mu_p**2 / eta_m, 1.0),
        eta_phi=eta_phi,
        eta_m=eta_m,
        integrals=integrals,
        mu_p=mu_p,
    )


def moebius_eta(
    integrals: PieceIntegrals,
    S: Sequence[float],
    Z: Sequence[float],
    alpha: Sequence[float],
) -> float:
    """
    The integral of omega^2 of (p o phi) o m for any feasible Z and alpha

    sum (ds_k / dz_k) ((1 - alpha_k) / alpha_k A_k + B_k + alpha_k / (1 - alpha_k) C_k)
    """
    S = check_breakpoints(S, "moebius_eta@S")
    Z = check_breakpoints(Z, "moebius_eta@Z", len(S))
    total = 0.0
    for k, a in enumerate(alpha):
        ratio = (S[k + 1] - S[k]) / (Z[k + 1] - Z[k])
        total += ratio * (
            (1.0 - a) / a * integrals.A[k] + integrals.B[k] + a / (1.0 - a) * integrals.C[k]
        )
    return total


class RadicalOptimizer:
    """
    Optimal piecewise radical and Moebius parameters for a curve over a partition

    Parameters
    ----------
    curve : ParametricCurve
    partition : Partition
    tolerance : float = 1e-9
        quadrature tolerance, also the largest remainder accepted when a zero
        of omega_p is divided out

    Methods
    -------
    piece_L(i)
    optimal_S()
        S*, from the cumulative sums of sqrt L_k
    eta_phi(S)
        the integral of omega^2 of p o phi for any feasible S
    stable_piece_integral(root, t_lo, t_hi, weight_case, ...)
        a zero-adjacent piece integral with the zero divided out exactly
    naive_piece_integral(root, t_lo, t_hi, weight_case, ...)
        the same integral straight from omega_p^2
    piece_ABC(S, i)
    optimize(mu_p)
        L -> S* -> A, B, C -> alpha*, Z*
    """

    def __init__(
        self,
        curve: ParametricCurve,
        partition: Partition,
        tolerance: float = DEFAULT_TOLERANCE,
    ) -> None:
        self._curve = curve
        self._partition = partition
        self._tolerance = tolerance
        self._L: Optional[Tuple[float, ...]] = None

    @property
    def curve(self) -> ParametricCurve:
        return self._curve

    @property
    def partition(self) -> Partition:
        return self._partition

    @property
    def tolerance(self) -> float:
        return self._tolerance

    def _density(
        self, kind: PieceKind, mu: int, root: Optional[IsolatedRoot], t_lo: float, t_hi: float, stable: bool
    ) -> Callable[[float], float]:
        """
        The base density b on the normalised coordinate u = t~ in [0, 1]
        omega^2 on plain pieces, omega^2 / ((mu + 1) d^mu) next to a zero with d = u or 1 - u
        """
        dt = t_hi - t_lo
        omega_squared = self._curve.angular_speed_squared()
        if kind is PieceKind.PLAIN:
            return lambda u: float(omega_squared(t_lo + dt * u))

        def distance(u: float) -> float:
            return u if kind is PieceKind.LEFT_ZERO else 1.0 - u

        if not stable:
            return lambda u: float(omega_squared(t_lo + dt * u)) / ((mu + 1) * distance(u) ** mu)

        cofactor = self._curve.cofactor(root)
        if cofactor.residual > self._tolerance:
            raise IllConditionedRoot(
                f"dividing out the zero near t = {root.value:.12g} leaves a remainder of "
                f"relative size {cofactor.residual:.3g}, above {self._tolerance:g}"
            )
        scale = dt ** (2 * mu) / (mu + 1)
        return lambda u: scale * distance(u) ** mu * float(cofactor.squared(t_lo + dt * u))

    def _piece_integral(
        self,
        kind: PieceKind,
        mu: int,
        root: Optional[IsolatedRoot],
        t_lo: float,
        t_hi: float,
        weight_case: str,
        stable: bool,
    ) -> QuadratureResult:
        if weight_case not in WEIGHTS:
            raise ValueError(f"weight_case must be one of {sorted(WEIGHTS)}, got {weight_case!r}")
        if not t_lo < t_hi:
            raise ValueError("t_lo must be less than t_hi")
        density = self._density(kind, mu, root, t_lo, t_hi, stable)
        weight = WEIGHTS[weight_case]
        exponent = mu + 1

        def integrand(u: float) -> float:
            return density(u) * weight(normalized_inverse(kind, exponent, u))

        result = integrate(integrand, 0.0, 1.0, self._tolerance)
        dt = t_hi - t_lo
        return QuadratureResult(result.value * dt, result.error_bound * dt, result.evaluations)

    def stable_piece_integral(
        self,
        root: IsolatedRoot,
        t_lo: float,
        t_hi: float,
        weight_case: str = "L",
        kind: PieceKind = PieceKind.LEFT_ZERO,
    ) -> QuadratureResult:
        """
        Integrates b * w(s~) over [t_lo, t_hi] for a piece with a zero of omega_p at one end

        omega_p^2 = G / H is split as (t - gamma)^(2 mu) Q / H + R / H with gamma an exact
        approximant of @root; the integrand (t - t_lo)^mu Q / ((mu + 1) H) is finite
        on the closed piece

        Parameters
        ----------
        root : IsolatedRoot
            the zero, multiplicity counted for omega_p
        t_lo, t_hi : float
            the piece
        weight_case : str = 'L'
            'L', 'A', 'B' or 'C'
        kind : PieceKind = PieceKind.LEFT_ZERO
            which end of the piece the zero sits at

        Raises
        ------
        IllConditionedRoot
            if the dropped remainder R is larger than the tolerance
        QuadratureError
        """
        return self._piece_integral(
            kind, root.multiplicity, root, t_lo, t_hi, weight_case, stable=True
        )

    def naive_piece_integral(
        self,
        root: IsolatedRoot,
        t_lo: float,
        t_hi: float,
        weight_case: str = "L",
        kind: PieceKind = PieceKind.LEFT_ZERO,
    ) -> QuadratureResult:
        """The integral of stable_piece_integral evaluated from omega_p^2 / d^mu in floating point"""
        return self._piece_integral(
            kind, root.multiplicity, root, t_lo, t_hi, weight_case, stable=False
        )

    def _integral(self, i: int, weight_case: str) -> float:
        kind, mu, root = self._partition.adjacent_zero(i)
        t_lo, t_hi = self._partition.interval(i)
        if kind is not PieceKind.PLAIN and root is None:
            raise ValueError(
                f"RadicalOptimizer@partition has no certified zero for piece {i}"
            )
        result = self._piece_integral(kind, mu, root, t_lo, t_hi, weight_case, stable=True)
        logger.debug(
            "piece %d %s: %s = %.12g (%d evaluations)",
            i,
            kind.value,
            weight_case,
            result.value,
            result.evaluations,
        )
        return result.value

    def piece_L(self, i: int) -> float:
        """
        L_i = dt_i * integral of omega_p^2 / ((mu + 1) t~^mu) on left_zero pieces,
        the mirrored form on right_zero pieces and dt_i * integral of omega_p^2 on plain ones
        """
        if not 0 <= i < self._partition.piece_count:
            raise IndexError(f"RadicalOptimizer.piece_L@i must lie in [0, {self._partition.piece_count})")
        dt = self._partition.t_points[i + 1] - self._partition.t_points[i]
        return dt * self._integral(i, "L")

    def piece_Ls(self) -> Tuple[float, ...]:
        if self._L is None:
            self._L = tuple(self.piece_L(i) for i in range(self._partition.piece_count))
        return self._L

    def optimal_S(self) -> Tuple[float, ...]:
        """
        Raises
        ------
        DegeneratePiece
            if some L_k is not positive
        """
        L = self.piece_Ls()
        if any(value <= 0 for value in L):
            raise DegeneratePiece(f"RadicalOptimizer.optimal_S: nonpositive L in {L}")
        return _cumulative_breakpoints(np.sqrt(L))

    def eta_phi(self, S: Sequence[float]) -> float:
        """sum L_k / ds_k"""
        S = check_breakpoints(S, "RadicalOptimizer.eta_phi@S", len(self._partition.t_points))
        L = self.piece_Ls()
        return float(sum(L[k] / (S[k + 1] - S[k]) for k in range(len(L))))

    def piece_ABC(self, S: Sequence[float], i: int) -> Tuple[float, float, float]:
        """A_i, B_i, C_i for breakpoints S"""
        S = check_breakpoints(S, "RadicalOptimizer.piece_ABC@S", len(self._partition.t_points))
        dt = self._partition.t_points[i + 1] - self._partition.t_points[i]
        scale = dt / (S[i + 1] - S[i])
        return tuple(scale * self._integral(i, case) for case in ("A", "B", "C"))

    def optimize(self, mu_p: Optional[float] = None) -> OptimizationResult:
        """
        Runs L -> S* -> A, B, C -> alpha*, Z*

        Parameters
        ----------
        mu_p : float = None
            the mean angular speed, computed by quadrature when omitted
        """
        if mu_p is None:
            mu_p = self._curve.uniformity(self._tolerance).mu
        L = self.piece_Ls()
        S = self.optimal_S()
        abc = [self.piece_ABC(S, i) for i in range(self._partition.piece_count)]
        integrals = PieceIntegrals.from_abc(
            L, [x[0] for x in abc], [x[1] for x in abc], [x[2] for x in abc], S
        )
        result = optimal_alpha_Z(integrals, S, mu_p)
        logger.info(
            "S* = %s, Z* = %s, u after phi %.6f, after m %.6f",
            [round(s, 6) for s in result.S_star],
            [round(z, 6) for z in result.Z_star],
            result.u_after_phi,
            result.u_after_m,
        )
        return result

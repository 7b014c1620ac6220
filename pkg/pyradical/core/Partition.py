import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .Errors import DegenerateLine, InvalidBreakpoints
from .ParametricCurve import ParametricCurve
from .Polynomial import IsolatedRoot, Polynomial

logger = logging.getLogger(__name__)

# breakpoints closer than this are one analytic point
MERGE_DISTANCE = 1e-10


class PieceKind(str, Enum):
    LEFT_ZERO = "left_zero"
    RIGHT_ZERO = "right_zero"
    PLAIN = "plain"


def omega_prime_numerator(curve: ParametricCurve) -> Polynomial:
    """
    Returns G'H - GH' for omega_p^2 = G / H

    Its roots in (0, 1) are the interior zeros of omega_p together with the
    critical points of omega_p, as (omega^2)' = 2 omega omega' and H has no root on [0, 1]

    Raises
    ------
    DegenerateLine
        if omega_p vanishes identically
    """
    if curve.is_line:
        raise DegenerateLine("omega_prime_numerator: the angular speed vanishes identically")
    omega_squared = curve.angular_speed_squared()
    g, h = omega_squared.numerator, omega_squared.denominator
    return g.differentiate() * h - g * h.differentiate()


class Partition:
    """
    The breakpoints T = (t_0, ..., t_N) of a piecewise radical transformation

    Parameters
    ----------
    t_points : Sequence[float]
        strictly increasing, t_0 = 0 and t_N = 1
    multiplicities : Sequence[int]
        mult(omega_p, t_i), 0 where omega_p does not vanish
    roots : Sequence[Optional[IsolatedRoot]] = None
        the certified zero behind each t_i of positive multiplicity

    Properties
    ----------
    t_points : Tuple[float]
    multiplicities : Tuple[int]
    roots : Tuple[Optional[IsolatedRoot]]
    piece_kinds : Tuple[PieceKind]
        left_zero when omega_p(t_i) = 0, right_zero when omega_p(t_{i+1}) = 0, else plain
    piece_count : int

    Methods
    -------
    build(curve, extra_breakpoints, tolerance)
        the partition at the zeros and local extrema of omega_p
    adjacent_zero(i)
        the zero, its multiplicity and its side for piece i
    """

    def __init__(
        self,
        t_points: Sequence[float],
        multiplicities: Sequence[int],
        roots: Optional[Sequence[Optional[IsolatedRoot]]] = None,
    ) -> None:
        t_points = tuple(float(t) for t in t_points)
        multiplicities = tuple(int(m) for m in multiplicities)
        roots = tuple(roots) if roots is not None else (None,) * len(t_points)

        if len(t_points) < 2:
            raise InvalidBreakpoints("Partition@t_points must have at least 2 entries")
        if len(multiplicities) != len(t_points) or len(roots) != len(t_points):
            raise InvalidBreakpoints(
                "Partition@multiplicities and roots must match t_points in length"
            )
        if t_points[0] != 0.0 or t_points[-1] != 1.0:
            raise InvalidBreakpoints("Partition@t_points must start at 0 and end at 1")
        if any(b <= a for a, b in zip(t_points, t_points[1:])):
            raise InvalidBreakpoints("Partition@t_points must be strictly increasing")
        if any(m < 0 for m in multiplicities):
            raise InvalidBreakpoints("Partition@multiplicities must be nonnegative")
        for a, b in zip(multiplicities, multiplicities[1:]):
            if a > 0 and b > 0:
                raise InvalidBreakpoints(
                    "Partition@multiplicities must not mark both ends of a piece as zeros"
                )

        self._t_points = t_points
        self._multiplicities = multiplicities
        self._roots = roots
        kinds = []
        for left, right in zip(multiplicities, multiplicities[1:]):
            if left > 0:
                kinds.append(PieceKind.LEFT_ZERO)
            elif right > 0:
                kinds.append(PieceKind.RIGHT_ZERO)
            else:
                kinds.append(PieceKind.PLAIN)
        self._piece_kinds = tuple(kinds)

    @classmethod
    def build(
        cls,
        curve: ParametricCurve,
        extra_breakpoints: int = 0,
        tolerance: float = 1e-12,
    ) -> "Partition":
        """
        Builds T from {0, 1}, the zeros of omega_p in [0, 1] and the critical points in (0, 1)

        Parameters
        ----------
        curve : ParametricCurve
        extra_breakpoints : int = 0
            evenly spaced points inserted inside every interval afterwards
        tolerance : float = 1e-12
            bracket width for the critical points

        Raises
        ------
        DegenerateLine
            if omega_p vanishes identically
        MalformedF
            if F has a root of odd multiplicity in [0, 1]
        """
        if extra_breakpoints < 0:
            raise ValueError("Partition.build@extra_breakpoints must be nonnegative")
        profile = curve.multiplicity_profile()

        # (value, multiplicity, root)
        candidates: List[Tuple[float, int, Optional[IsolatedRoot]]] = [
            (0.0, 0, None),
            (1.0, 0, None),
        ]
        candidates += [(z.value, z.multiplicity, z) for z in profile.zero_factors]
        numerator = omega_prime_numerator(curve)
        if not numerator.is_zero:
            candidates += [
                (c.value, 0, None)
                for c in numerator.isolate_roots(0, 1, tolerance)
                if 0 < c.value < 1
            ]

        points = cls._merge(sorted(candidates, key=lambda c: c[0]))
        points = cls._separate_zeros(points)
        if extra_breakpoints:
            points = cls._subdivide(points, extra_breakpoints)

        partition = cls(
            [p[0] for p in points], [p[1] for p in points], [p[2] for p in points]
        )
        logger.debug(
            "partition T = %s, multiplicities %s",
            [round(t, 12) for t in partition.t_points],
            partition.multiplicities,
        )
        return partition

    @staticmethod
    def _merge(points):
        merged = []
        for value, multiplicity, root in points:
            if merged and value - merged[-1][0] <= MERGE_DISTANCE:
                last_value, last_multiplicity, last_root = merged[-1]
                if last_value in (0.0, 1.0):
                    value = last_value
                elif value not in (0.0, 1.0) and multiplicity <= last_multiplicity:
                    value = last_value
                if multiplicity > last_multiplicity:
                    merged[-1] = (value, multiplicity, root)
                else:
                    merged[-1] = (value, last_multiplicity, last_root)
            else:
                merged.append((value, multiplicity, root))
        return merged

    @staticmethod
    def _separate_zeros(points):
        separated = [points[0]]
        for point in points[1:]:
            previous = separated[-1]
            if previous[1] > 0 and point[1] > 0:
                separated.append(((previous[0] + point[0]) / 2, 0, None))
            separated.append(point)
        return separated

    @staticmethod
    def _subdivide(points, count):
        subdivided = [points[0]]
        for (a, _, _), point in zip(points, points[1:]):
            step = (point[0] - a) / (count + 1)
            subdivided += [(a + k * step, 0, None) for k in range(1, count + 1)]
            subdivided.append(point)
        return subdivided

    @property
    def t_points(self) -> Tuple[float, ...]:
        return self._t_points

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return self._multiplicities

    @property
    def roots(self) -> Tuple[Optional[IsolatedRoot], ...]:
        return self._roots

    @property
    def piece_kinds(self) -> Tuple[PieceKind, ...]:
        return self._piece_kinds

    @property
    def piece_count(self) -> int:
        return len(self._piece_kinds)

    def __repr__(self) -> str:
        return f"Partition(t_points={self._t_points}, multiplicities={self._multiplicities})"

    def interval(self, i: int) -> Tuple[float, float]:
        return self._t_points[i], self._t_points[i + 1]

    def adjacent_zero(self, i: int) -> Tuple[PieceKind, int, Optional[IsolatedRoot]]:
        """
        Returns (kind, mu, root) for piece i
        mu is the multiplicity of the zero endpoint, 0 on plain pieces
        """
        kind = self._piece_kinds[i]
        if kind is PieceKind.LEFT_ZERO:
            return kind, self._multiplicities[i], self._roots[i]
        if kind is PieceKind.RIGHT_ZERO:
            return kind, self._multiplicities[i + 1], self._roots[i + 1]
        return kind, 0, None

import numpy as np
import pytest

from pyradical.core import (
    DegenerateLine,
    InvalidBreakpoints,
    ParametricCurve,
    Partition,
    PieceKind,
    omega_prime_numerator,
)

CORPUS = [
    ["t", "t^3"],
    ["t", "t^4"],
    ["t", "t^5"],
    ["t", "(t - 2/5)^3"],
    ["t", "(t - 1/2)^4"],
    ["t", "(t - 1)^3"],
    ["t", "t^4 - 3*t^2"],
    ["t", "t^3 - t^2"],
    ["t", "25*t^4 - 50*t^3 + 24*t^2"],
    ["t", "t^3", "t^3"],
]


def test_cubic():
    partition = Partition.build(ParametricCurve.from_expressions(["t", "t^3"]))
    assert partition.t_points == pytest.approx((0.0, 3**-0.75, 1.0), abs=1e-9)
    assert partition.t_points[1] == pytest.approx(0.439, abs=1e-3)
    assert partition.multiplicities == (1, 0, 0)
    assert partition.piece_kinds == (PieceKind.LEFT_ZERO, PieceKind.PLAIN)
    assert partition.piece_count == 2
    assert partition.roots[0].is_exact
    assert partition.roots[1] is None

    kind, mu, root = partition.adjacent_zero(0)
    assert kind is PieceKind.LEFT_ZERO
    assert mu == 1
    assert root.value == 0.0
    assert partition.adjacent_zero(1) == (PieceKind.PLAIN, 0, None)


def test_no_zeros():
    partition = Partition.build(ParametricCurve.from_expressions(["t", "t^2"]))
    assert partition.t_points == (0.0, 1.0)
    assert partition.multiplicities == (0, 0)
    assert partition.piece_kinds == (PieceKind.PLAIN,)


def test_interior_zero():
    partition = Partition.build(ParametricCurve.from_expressions(["t", "(t - 2/5)^3"]))
    assert partition.t_points == pytest.approx((0.0, 0.4, 0.4 + 3**-0.75, 1.0), abs=1e-9)
    assert partition.multiplicities == (0, 1, 0, 0)
    assert partition.piece_kinds == (
        PieceKind.RIGHT_ZERO,
        PieceKind.LEFT_ZERO,
        PieceKind.PLAIN,
    )
    assert partition.adjacent_zero(0)[1] == 1


def test_zero_at_one():
    partition = Partition.build(ParametricCurve.from_expressions(["t", "(t - 1)^3"]))
    assert partition.t_points == pytest.approx((0.0, 1 - 3**-0.75, 1.0), abs=1e-9)
    assert partition.t_points[-1] == 1.0
    assert partition.multiplicities == (0, 0, 1)
    assert partition.piece_kinds == (PieceKind.PLAIN, PieceKind.RIGHT_ZERO)


def test_two_zeros():
    partition = Partition.build(
        ParametricCurve.from_expressions(["t", "25*t^4 - 50*t^3 + 24*t^2"])
    )
    zeros = [t for t, m in zip(partition.t_points, partition.multiplicities) if m > 0]
    assert zeros == pytest.approx([0.2, 0.8], abs=1e-12)
    for left, right in zip(partition.multiplicities, partition.multiplicities[1:]):
        assert left == 0 or right == 0


def test_extra_breakpoints():
    curve = ParametricCurve.from_expressions(["t", "t^3"])
    partition = Partition.build(curve, extra_breakpoints=1)
    c = 3**-0.75
    assert partition.t_points == pytest.approx((0.0, c / 2, c, (c + 1) / 2, 1.0), abs=1e-9)
    assert partition.multiplicities == (1, 0, 0, 0, 0)
    assert partition.piece_kinds == (PieceKind.LEFT_ZERO,) + (PieceKind.PLAIN,) * 3

    with pytest.raises(ValueError):
        Partition.build(curve, extra_breakpoints=-1)


def test_omega_prime_numerator():
    numerator = omega_prime_numerator(ParametricCurve.from_expressions(["t", "t^3"]))
    roots = [r.value for r in numerator.isolate_roots(0, 1)]
    assert roots == pytest.approx([0.0, 3**-0.75], abs=1e-12)

    # proportional to 72 t (9 t^4 + 1) (1 - 27 t^4)
    def expected(t):
        return 72 * t * (9 * t**4 + 1) * (1 - 27 * t**4)

    assert numerator(0.3) / expected(0.3) == pytest.approx(numerator(0.7) / expected(0.7), rel=1e-12)

    # interior critical point of omega for t^4, checked against finite differences
    quartic = ParametricCurve.from_expressions(["t", "t^4"])
    interior = [r.value for r in omega_prime_numerator(quartic).isolate_roots(0, 1) if 0 < r.value < 1]
    grid = np.linspace(1e-4, 1.0, 10**4)
    slope = np.diff(quartic.evaluate_omega(grid))
    changes = grid[1:-1][np.sign(slope[1:]) != np.sign(slope[:-1])]
    assert interior == pytest.approx(list(changes), abs=2e-4)

    with pytest.raises(DegenerateLine):
        omega_prime_numerator(ParametricCurve.from_expressions(["t", "2*t"]))


def test_line():
    with pytest.raises(DegenerateLine):
        Partition.build(ParametricCurve.from_expressions(["t", "2*t"]))


def test_validation():
    with pytest.raises(InvalidBreakpoints):
        Partition((0.0, 0.5), (0, 0))
    with pytest.raises(InvalidBreakpoints):
        Partition((0.0, 0.5, 0.5, 1.0), (0, 0, 0, 0))
    with pytest.raises(InvalidBreakpoints):
        Partition((0.0, 1.0), (1, 1))
    with pytest.raises(InvalidBreakpoints):
        Partition((0.0, 1.0), (0,))
    with pytest.raises(InvalidBreakpoints):
        Partition((0.0, 1.0), (-1, 0))

    partition = Partition((0.0, 0.5, 1.0), (0, 2, 0))
    assert partition.piece_kinds == (PieceKind.RIGHT_ZERO, PieceKind.LEFT_ZERO)
    assert partition.adjacent_zero(0) == (PieceKind.RIGHT_ZERO, 2, None)
    assert partition.interval(1) == (0.5, 1.0)


@pytest.mark.parametrize("coordinates", CORPUS)
def test_corpus_invariants(coordinates):
    curve = ParametricCurve.from_expressions(coordinates)
    partition = Partition.build(curve)

    T = partition.t_points
    assert T[0] == 0.0 and T[-1] == 1.0
    assert all(b > a for a, b in zip(T, T[1:]))
    assert any(m > 0 for m in partition.multiplicities)
    for t, m in zip(T, partition.multiplicities):
        assert (m > 0) == (curve.evaluate_omega(t) < 1e-6)

    for i in range(partition.piece_count):
        a, b = partition.interval(i)
        interior = np.linspace(a, b, 52)[1:-1]
        assert np.all(curve.evaluate_omega(interior) > 0)

        samples = np.linspace(a, b, 200)
        slope = np.diff(curve.evaluate_omega(samples))
        assert np.all(slope >= -1e-12) or np.all(slope <= 1e-12)

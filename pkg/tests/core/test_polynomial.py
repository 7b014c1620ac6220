import math

import numpy as np
import pytest
from sympy import Rational

from pyradical.core import InexactDivision, IsolatedRoot, Polynomial, RationalFunction, ZeroPolynomial
from pyradical.core.Polynomial import T, exact


def test_exact():
    assert exact("0.1") == Rational(1, 10)
    assert exact(0.5) == Rational(1, 2)
    assert exact(3) == Rational(3)
    assert exact("2/7") == Rational(2, 7)


def test_polynomial_basics():
    p = Polynomial([1, 0, 3])
    assert p.coefficients == [1, 0, 3]
    assert p.degree == 2
    assert p.leading_coefficient == 3
    assert not p.is_zero

    zero = Polynomial()
    assert zero.is_zero
    assert zero.degree == -1
    assert zero.coefficients == []

    # trailing zeros are dropped
    assert Polynomial([1, 2, 0, 0]).degree == 1


def test_arithmetic():
    t = Polynomial([0, 1])
    assert (t + 1) * (t - 1) == Polynomial([-1, 0, 1])
    assert 1 - t == Polynomial([1, -1])
    assert -t == Polynomial([0, -1])
    assert t**3 == Polynomial([0, 0, 0, 1])
    assert Polynomial.linear(Rational(1, 2)) == Polynomial([Rational(-1, 2), 1])
    assert Polynomial.from_expression(T**2 + 2 * T) == Polynomial([0, 2, 1])

    with pytest.raises(ValueError):
        t ** -1


def test_evaluate():
    p = Polynomial([1, 0, 3])
    assert p(2.0) == 13.0
    np.testing.assert_allclose(p(np.array([0.0, 1.0])), [1.0, 4.0])
    assert p.evaluate_exact(Rational(1, 3)) == Rational(4, 3)
    assert p.differentiate() == Polynomial([0, 6])


def test_division_gcd_lcm():
    a = Polynomial.from_expression((T - 1) ** 2 * (T + 2))
    b = Polynomial.from_expression((T - 1) * (T + 3))
    assert a.gcd(b) == Polynomial([-1, 1])
    assert a.lcm(b) == Polynomial.from_expression((T - 1) ** 2 * (T + 2) * (T + 3))
    assert a.exquo(Polynomial([-1, 1])) == Polynomial.from_expression((T - 1) * (T + 2))

    q, r = Polynomial([1, 0, 1]).div(Polynomial([0, 1]))
    assert q == Polynomial([0, 1])
    assert r == Polynomial([1])

    with pytest.raises(ZeroPolynomial):
        a.div(Polynomial())
    with pytest.raises(InexactDivision):
        b.exquo(Polynomial([2, 1]))
    with pytest.raises(ArithmeticError):
        a.exquo(b)


def test_squarefree_decomposition():
    p = Polynomial.from_expression(3 * (T - Rational(1, 2)) ** 2 * (T + 3))
    decomposition = p.squarefree_decomposition()
    assert decomposition.expand() == p
    assert sorted(k for _, k in decomposition.factors) == [1, 2]

    with pytest.raises(ZeroPolynomial):
        Polynomial().squarefree_decomposition()


def test_isolate_roots():
    roots = Polynomial.from_expression((T - Rational(1, 3)) * (T - Rational(2, 3)) * (T - 5)).isolate_roots()
    assert [r.value for r in roots] == pytest.approx([1 / 3, 2 / 3], abs=1e-12)
    assert all(r.multiplicity == 1 for r in roots)

    # endpoints count
    assert [r.value for r in Polynomial([0, 1]).isolate_roots()] == [0.0]
    assert [r.value for r in Polynomial([-1, 1]).isolate_roots()] == [1.0]
    assert Polynomial([0, 1]).isolate_roots()[0].is_exact
    assert Polynomial([-2, 1]).isolate_roots() == []

    with pytest.raises(ZeroPolynomial):
        Polynomial().isolate_roots()
    with pytest.raises(ValueError):
        Polynomial([0, 1]).isolate_roots(1, 0)


def test_irrational_root():
    f = Polynomial([-1, 0, 2]) ** 2
    (root,) = f.isolate_roots(0, 1, 1e-12)
    assert root.value == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert root.multiplicity == 2
    assert not root.is_exact
    assert root.upper - root.lower <= Rational(1, 10**12)

    fine = root.refine(Rational(1, 10**20))
    assert fine.upper - fine.lower < Rational(1, 10**20)
    assert 2 * fine.lower**2 < 1 < 2 * fine.upper**2

    gamma = root.approximant()
    assert abs(2 * gamma**2 - 1) < Rational(1, 10**28)
    assert root.with_multiplicity(1).multiplicity == 1


def test_isolated_root_validation():
    half = Rational(1, 2)
    with pytest.raises(ValueError):
        IsolatedRoot(Polynomial.linear(half), half, half, 0.5, 0, (half, half))
    assert IsolatedRoot(Polynomial.linear(half), half, half, 0.5, 1, (half, half)).approximant() == half


def test_euclidean_division():
    g = Polynomial([0, 0, 36])
    division = g.euclidean_division(0, 2)
    assert division.quotient == Polynomial([36])
    assert division.remainder.is_zero
    assert division.residual == 0.0

    # a rounded root leaves a remainder behind
    f = Polynomial([-1, 0, 2])
    division = f.euclidean_division(Rational(707, 1000), 2)
    assert division.quotient == Polynomial([2])
    assert division.residual > 1e-3
    assert f.euclidean_quotient(Rational(707, 1000), 2) == Polynomial([2])

    with pytest.raises(ValueError):
        g.euclidean_division(0, 0)


def test_rational_function():
    f = RationalFunction(Polynomial([-1, 0, 1]), Polynomial([-1, 1]))
    assert f.numerator == Polynomial([1, 1])
    assert f.denominator == Polynomial([1])

    # the denominator is made monic
    g = RationalFunction(Polynomial([2]), Polynomial([0, 4]))
    assert g.numerator == Polynomial([Rational(1, 2)])
    assert g.denominator == Polynomial([0, 1])
    assert g(0.5) == pytest.approx(1.0)
    assert g.derivative() == RationalFunction(Polynomial([Rational(-1, 2)]), Polynomial([0, 0, 1]))

    assert RationalFunction.from_expression(T / (T**2 + T)) == RationalFunction(
        Polynomial([1]), Polynomial([1, 1])
    )
    assert RationalFunction(Polynomial(), Polynomial([0, 1])).is_zero

    with pytest.raises(ZeroPolynomial):
        RationalFunction(Polynomial([1]), Polynomial())


def random_polynomial(rng: np.random.Generator, degree: int) -> Polynomial:
    numerators = rng.integers(-20, 21, degree + 1)
    denominators = rng.integers(1, 10, degree + 1)
    coefficients = [Rational(int(n), int(d)) for n, d in zip(numerators, denominators)]
    if coefficients[-1] == 0:
        coefficients[-1] = Rational(1)
    return Polynomial(coefficients)


@pytest.mark.parametrize("seed", range(5))
def test_differentiate_is_linear_random(seed):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        p = random_polynomial(rng, int(rng.integers(0, 11)))
        q = random_polynomial(rng, int(rng.integers(0, 11)))
        a, b = Rational(int(rng.integers(-9, 10)), 7), Rational(int(rng.integers(-9, 10)), 5)
        assert (p * a + q * b).differentiate() == p.differentiate() * a + q.differentiate() * b


@pytest.mark.parametrize("seed", range(5))
def test_squarefree_reconstruction_random(seed):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        p = Polynomial([Rational(int(rng.integers(1, 10)), int(rng.integers(1, 10)))])
        for _ in range(int(rng.integers(1, 4))):
            factor = random_polynomial(rng, int(rng.integers(1, 3)))
            p = p * factor ** int(rng.integers(1, 4))
        decomposition = p.squarefree_decomposition()
        assert decomposition.expand() == p

        factors = [f for f, _ in decomposition.factors]
        for i, f in enumerate(factors):
            assert f.gcd(f.differentiate()).degree == 0
            for g in factors[i + 1 :]:
                assert f.gcd(g).degree == 0


@pytest.mark.parametrize("seed", range(10))
def test_planted_roots_random(seed):
    rng = np.random.default_rng(seed)
    count = int(rng.integers(1, 4))
    numerators = sorted(int(n) for n in rng.choice(np.arange(1, 97), count, replace=False))
    multiplicities = [int(rng.integers(1, 3)) for _ in numerators]
    # one root outside [0, 1] that must not be reported
    p = Polynomial.linear(Rational(3, 2)) * Rational(int(rng.integers(1, 10)))
    for n, k in zip(numerators, multiplicities):
        p = p * Polynomial.linear(Rational(n, 97)) ** k
    assert p.degree <= 8

    roots = p.isolate_roots(0, 1, 1e-12)
    assert [r.value for r in roots] == pytest.approx([n / 97 for n in numerators], abs=1e-12)
    assert [r.multiplicity for r in roots] == multiplicities
    for r, n in zip(roots, numerators):
        assert r.lower <= Rational(n, 97) <= r.upper


@pytest.mark.parametrize("seed", range(5))
def test_euclidean_reconstruction_random(seed):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        g = random_polynomial(rng, int(rng.integers(0, 9)))
        gamma = Rational(int(rng.integers(-50, 51)), int(rng.integers(1, 60)))
        power = int(rng.integers(1, 5))
        division = g.euclidean_division(gamma, power)
        assert Polynomial.linear(gamma) ** power * division.quotient + division.remainder == g
        assert division.remainder.degree < power

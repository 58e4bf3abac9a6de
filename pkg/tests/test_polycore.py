#!/usr/bin/env python3
"""
Test suite for polynomial arithmetic and the complex root finder
"""

import cmath
import math
import os
import sys
from fractions import Fraction

import pytest

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadzeros.errors import DegenerateLeadingCoefficient
from quadzeros.polycore import (
    FloatPoly,
    RationalPoly,
    add,
    as_fraction,
    complex_roots,
    compose,
    cubic_discriminant,
    derivative,
    eval_rational,
    gcd,
    mul,
    scale,
    solve_coefficients,
    squarefree_decomposition,
)

F = Fraction


def P(*coeffs):
    return RationalPoly(tuple(coeffs))


class TestExactArithmetic:
    """Ring operations over the rationals"""

    def setup_method(self):
        self.h4 = P(1, 5, 1)
        self.samples = [P(1, -2, F(1, 3)), P(F(-1, 2), 0, 0, 4), P(7), P(0, 1), P(3, F(5, 7), -1, F(2, 9))]

    def test_difference_of_squares(self):
        assert mul(P(1, 1), P(1, -1)) == P(1, 0, -1)

    def test_derivative(self):
        assert derivative(self.h4) == P(5, 2)
        assert derivative(P(4)).is_zero()

    def test_scale_by_zero_gives_zero_polynomial(self):
        zero = scale(P(-1, 0, 1), 0)
        assert zero.is_zero()
        assert zero.degree() == -1
        assert zero.coeffs == ()

    def test_trailing_zeros_trimmed(self):
        assert P(1, 2, 0, 0).degree() == 1
        assert add(P(1, 0, 1), P(0, 0, -1)) == P(1)

    def test_eval_horner(self):
        assert eval_rational(self.h4, -5) == 1
        assert eval_rational(self.h4, 0) == 1
        assert eval_rational(RationalPoly.zero(), F(3, 7)) == 0

    def test_evaluation_is_multiplicative(self):
        points = [F(-3), F(-1, 2), F(0), F(2, 3), F(5, 4)]
        for p in self.samples:
            for q in self.samples:
                for x in points:
                    assert eval_rational(p * q, x) == eval_rational(p, x) * eval_rational(q, x)

    def test_divmod_reconstructs(self):
        p = P(1, -2, 3, -4, 5)
        d = P(F(1, 2), 0, 1)
        q, r = divmod(p, d)
        assert q * d + r == p
        assert r.degree() < d.degree()

    def test_gcd_is_monic(self):
        p = P(-1, 0, 1) * P(2, 1)
        q = P(-1, 1) * P(5, 0, 1)
        assert gcd(p, q) == P(-1, 1)
        assert gcd(P(2, 4), P(3, 6)) == P(F(1, 2), 1)

    def test_compose(self):
        inner = P(F(1, 2), 3)
        p = P(1, 5, 1)
        assert compose(p, inner) == P(1, 5, 1).compose(inner)
        assert eval_rational(compose(p, inner), 2) == eval_rational(p, eval_rational(inner, 2))

    def test_squarefree_decomposition(self):
        p = P(-1, 1) ** 2 * P(2, 1) * 3
        factors = squarefree_decomposition(p)
        assert factors == [(P(2, 1), 1), (P(-1, 1), 2)]

    def test_cubic_discriminant(self):
        # x^3 - x has roots -1, 0, 1: product of squared differences is 4
        assert cubic_discriminant(1, 0, -1, 0) == 4
        assert cubic_discriminant(1, -3, 3, -1) == 0

    def test_as_fraction(self):
        assert as_fraction("0.3") == F(3, 10)
        assert as_fraction("-1/3") == F(-1, 3)
        assert as_fraction(0.5) == F(1, 2)
        with pytest.raises(ValueError):
            as_fraction(float('nan'))


class TestComplexRoots:
    """Numeric root finder contract"""

    def setup_method(self):
        self.golden_z = -(1 + math.sqrt(5)) / 2

    def test_imaginary_pair(self):
        roots = sorted(complex_roots(FloatPoly((1, 0, 1))).roots, key=lambda r: r.imag)
        assert roots[0] == pytest.approx(-1j)
        assert roots[1] == pytest.approx(1j)

    def test_linear(self):
        assert complex_roots(FloatPoly((-1, 2))).roots == (0.5 + 0j,)

    def test_denominator_at_golden_point(self):
        z = self.golden_z
        result = solve_coefficients((1.0, 1.0, -z, z))
        tau = (math.sqrt(5) - 1) / 2
        expected = [tau * cmath.exp(2j * math.pi / 3), tau * cmath.exp(-2j * math.pi / 3), complex(-z)]
        for e in expected:
            assert min(abs(r - e) for r in result.roots) < 1e-9

    def test_vieta_and_residuals(self):
        for coeffs in [(1, 1, 0.3, -2.0), (2, -3, 0, 1), (0.5, 1, 1.5, 2, -1)]:
            result = solve_coefficients(coeffs, tol=1e-10)
            assert len(result.roots) == len(coeffs) - 1
            assert result.vieta_sum_error() < 1e-9
            for r, res in zip(result.roots, result.residuals):
                scale = sum(abs(c) * abs(r) ** k for k, c in enumerate(coeffs))
                assert res <= 1e-10 * scale

    def test_complex_coefficients(self):
        z = 0.2 + 0.7j
        result = solve_coefficients((1, 1, -z, z))
        assert result.vieta_sum_error() < 1e-9

    def test_real_cubic_keeps_real_roots_real(self):
        roots = complex_roots(FloatPoly((-6, 11, -6, 1))).real_roots()
        assert sorted(roots) == pytest.approx([1, 2, 3], rel=1e-12)

    def test_degenerate_leading_coefficient(self):
        with pytest.raises(DegenerateLeadingCoefficient):
            complex_roots(FloatPoly((1, 1, 1e-301)))

    def test_float_poly_rejects_nan(self):
        with pytest.raises(ValueError):
            FloatPoly((1.0, float('inf')))

#!/usr/bin/env python3
"""
Test suite for limit points of zeros and nonreal witnesses
"""

import math
import os
import sys
from fractions import Fraction

import pytest

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadzeros.asymptotics import (
    confirm_nonreal,
    discriminant_x,
    dominance,
    double_root_zeta,
    real_axis_scan,
    witness,
    witness_above,
    witness_below,
)
from quadzeros.errors import PreconditionFailed
from quadzeros.recurrence import NormParams
from quadzeros.thetaengine import sample

F = Fraction


class TestDominance:
    """Equal-modulus test on the zeros of D(t, z)"""

    def setup_method(self):
        self.golden = NormParams(0, 1)

    def test_golden_point_is_limit(self):
        result = dominance(self.golden, -(1 + math.sqrt(5)) / 2)
        assert result.in_limit_set
        assert result.gap < 1e-10

    def test_positive_real_is_not_limit(self):
        result = dominance(self.golden, 1.0)
        assert not result.in_limit_set
        assert result.gap == pytest.approx(0.81, abs=0.02)

    def test_conjugates_agree(self):
        z = complex(-0.4, 0.9)
        up, down = dominance(self.golden, z), dominance(self.golden, z.conjugate())
        assert up.moduli == down.moduli
        assert up.in_limit_set == down.in_limit_set

    def test_invalid_inputs(self):
        with pytest.raises(PreconditionFailed):
            dominance(self.golden, 0)
        with pytest.raises(PreconditionFailed):
            dominance(self.golden, -1.0, tol=0)

    def test_theta_samples_are_limits(self):
        for a, b in [(F(0), F(1)), (F(-1), F(1, 2)), (F(3, 10), F(1))]:
            p = NormParams(a, b)
            for theta in (1.8, 2.2, 2.6, 3.0):
                s = sample(p, theta)
                assert dominance(p, s.z, tol=1e-7).in_limit_set

    def test_real_axis_scan_keeps_order(self):
        zs = [-5.0, -1.0, 0.5, 2.0]
        results = real_axis_scan(self.golden, zs, workers=1)
        assert [r.z.real for r in results] == zs
        assert results[1].in_limit_set
        assert not results[2].in_limit_set


class TestWitnessBelow:
    """a < -b - 1: witnesses near theta = pi/2"""

    @pytest.mark.parametrize("a", [F(-3), F(-2001, 1000), F(-5, 2)])
    def test_nonreal_witness(self, a):
        p = NormParams(a, 1)
        result = witness_below(p)
        assert result.regime == 'a_below'
        assert abs(result.witness_z.imag) > 0
        assert abs(result.certificate['zeta_star']) < 1
        assert dominance(p, result.witness_z, tol=1e-6).in_limit_set

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            witness_below(NormParams(F(-3, 2), 1))


class TestWitnessAbove:
    """a > (b + 9)/27: witnesses past the double root of f*"""

    def setup_method(self):
        self.p = NormParams(1, 1)

    def test_discriminant_values(self):
        delta = discriminant_x(self.p)
        assert delta(F(0)) == 32
        assert delta(F(1)) == -204

    def test_discriminant_identities(self):
        for a in (F(-2), F(-1, 3), F(1, 5), F(1), F(3)):
            for b in (F(0), F(1, 2), F(2)):
                p = NormParams(a, b)
                delta = discriminant_x(p)
                assert delta(F(0)) == 4 * a * (b + 1) ** 3
                assert delta(F(1)) == -4 * (27 * a - b - 9) * (a * b * b + b + 1)

    def test_discriminant_needs_cubic(self):
        with pytest.raises(PreconditionFailed):
            discriminant_x(NormParams(0, 1))

    def test_witness(self):
        result = witness_above(self.p)
        assert result.regime == 'a_above'
        x_prime = result.certificate['x_prime']
        assert 0 < x_prime < 1
        assert abs(result.certificate['zeta_prime']) < 1
        assert abs(result.witness_z.imag) > 0
        assert dominance(self.p, result.witness_z, tol=1e-6).in_limit_set

    def test_double_root(self):
        # f* shares the double root with its derivative at x'
        x_prime = witness_above(self.p).certificate['x_prime']
        zeta = double_root_zeta(self.p, x_prime)
        c = math.sqrt(x_prime)
        # f* at a = b = 1: -r^3 - 4c r^2 + (2 - 8c^2) r + 2c - 8c^3
        value = -zeta ** 3 - 4 * c * zeta ** 2 + (2 - 8 * c * c) * zeta + 2 * c - 8 * c ** 3
        slope = -3 * zeta ** 2 - 8 * c * zeta + (2 - 8 * c * c)
        assert abs(value) < 1e-7
        assert abs(slope) < 1e-6

    @pytest.mark.parametrize("a", [F(1), F(10), F(103, 300)])
    def test_b_zero_skips_unit_circle_double_root(self, a):
        # b = 0: delta vanishes at x = 1/4 (double root -2c = -1) and at x = a/(4a - 1)
        p = NormParams(a, 0)
        delta = discriminant_x(p)
        assert delta(F(1, 4)) == 0
        assert delta(a / (4 * a - 1)) == 0
        result = witness(p)
        assert result.regime == 'a_above'
        assert result.certificate['x_prime'] == pytest.approx(float(a / (4 * a - 1)), rel=1e-9)
        assert abs(result.certificate['zeta_prime']) < 1
        assert abs(result.witness_z.imag) > 0
        assert dominance(p, result.witness_z, tol=1e-6).in_limit_set

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            witness_above(NormParams(F(3, 10), 1))


class TestConfirmation:
    """Exact confirmation that some H_m has a nonreal zero"""

    def test_above(self):
        m = confirm_nonreal(NormParams(1, 1), m_cap=60)
        assert m is not None and m <= 60

    def test_below(self):
        m = confirm_nonreal(NormParams(-3, 1), m_cap=60)
        assert m is not None and m <= 60

    def test_near_boundary_outlasts_cap(self):
        # a = -21/10, b = 1 fails the condition, yet H_1..H_40 have only real zeros
        p = NormParams(F(-21, 10), 1)
        assert confirm_nonreal(p, m_cap=40) is None
        result = witness_below(p)
        assert abs(result.witness_z.imag) > 0
        assert dominance(p, result.witness_z, tol=1e-6).in_limit_set

    def test_inside_region(self):
        assert confirm_nonreal(NormParams(0, 1), m_cap=30) is None

    def test_auto_regime(self):
        assert witness(NormParams(-3, 1)).regime == 'a_below'
        result = witness(NormParams(1, 1), confirm=True, m_cap=60)
        assert result.regime == 'a_above'
        assert result.confirmed_m is not None
        with pytest.raises(PreconditionFailed):
            witness(NormParams(0, 1))

#!/usr/bin/env python3
"""
Test suite for parameter reduction, the reality condition and the zero interval
"""

import math
import os
import sys
from fractions import Fraction

import pytest

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadzeros.errors import ConditionViolated, InvalidParams
from quadzeros.recurrence import GeneralParams, NormParams, gen_H
from quadzeros.zerolocus import (
    check_containment,
    closed_form_zeta0,
    endpoint_cubic,
    exclusion_polynomials,
    interval_H,
    interval_P,
    normalize,
    oppsign_product,
    reality_condition,
    require_condition,
    vanishing_exclusions,
    zeta0,
)

F = Fraction


class TestNormalization:
    """General coefficients reduce to (a, b)"""

    def test_identity_parameters(self):
        assert normalize(GeneralParams(1, 0, 0, 0, 1)) == NormParams(0, 0)

    def test_b_from_b1(self):
        assert normalize(GeneralParams(1, 0, -2, 0, 1)) == NormParams(0, 2)

    def test_a_from_b0(self):
        assert normalize(GeneralParams(1, 1, 0, 0, 1)) == NormParams(1, 0)
        assert normalize(GeneralParams(2, 4, 0, 0, -1)) == NormParams(1, 0)

    def test_rejects_other_types(self):
        with pytest.raises(InvalidParams):
            normalize(NormParams(0, 0))


class TestRealityCondition:
    """1 + a + b >= 0 and 9 - 27a + b >= 0"""

    def test_region(self):
        assert reality_condition(NormParams(0, 0))
        assert reality_condition(NormParams(F(1, 3), 0))
        assert reality_condition(NormParams(-1, 0))
        assert reality_condition(NormParams(F(10, 27), 1))
        assert not reality_condition(NormParams(F(-11, 10), 0))
        assert not reality_condition(NormParams(F(1, 3) + F(1, 1000), 0))
        assert not reality_condition(NormParams(1, 1))

    def test_require_condition(self):
        require_condition(NormParams(0, 1))
        with pytest.raises(ConditionViolated):
            require_condition(NormParams(-3, 1))


class TestZeta0:
    """The endpoint root and the interval it fixes"""

    def test_origin(self):
        result = zeta0(NormParams(0, 0))
        assert result.zeta0 == pytest.approx(2, abs=1e-14)
        assert result.endpoint == pytest.approx(-4 / 27, abs=1e-14)
        assert not result.degenerate

    def test_exact_root_on_unit_circle(self):
        # (2/3) z^3 + z^2 - 1/3 = (1/3)(z + 1)^2 (2z - 1)
        result = zeta0(NormParams(F(1, 3), 0))
        assert result.exact == -1
        assert result.zeta0 == -1.0
        assert result.endpoint == pytest.approx(1 / 27, abs=1e-15)

    def test_golden_pair(self):
        result = zeta0(NormParams(0, 1))
        assert result.zeta0 == pytest.approx((3 + math.sqrt(5)) / 2, abs=1e-12)
        assert result.endpoint < 0

    def test_quarter_is_degenerate(self):
        result = zeta0(NormParams(F(1, 4), 1))
        assert result.degenerate
        assert math.isinf(result.zeta0)
        assert result.endpoint == 0.0

    def test_cubic_residual(self):
        for a, b in [(F(-1), F(1, 2)), (F(1, 5), F(1, 2)), (F(3, 10), 1), (F(-1, 2), 2)]:
            p = NormParams(a, b)
            z0 = zeta0(p).zeta0
            cubic = endpoint_cubic(p).to_float()
            scale = sum(abs(c) * abs(z0) ** k for k, c in enumerate(cubic.coeffs))
            assert abs(cubic(z0)) <= 1e-13 * scale
            assert abs(z0) >= 1

    def test_closed_form_for_b_zero(self):
        for a in (F(-1), F(0), F(1, 10), F(1, 5), F(3, 10), F(1, 3)):
            assert zeta0(NormParams(a, 0)).zeta0 == pytest.approx(closed_form_zeta0(a), rel=1e-12)

    def test_float_method_agrees(self):
        for a, b in [(F(0), F(1)), (F(-1), F(1, 2)), (F(3, 10), F(1))]:
            p = NormParams(a, b)
            assert zeta0(p, method='float').zeta0 == pytest.approx(zeta0(p).zeta0, rel=1e-9)

    def test_unknown_method(self):
        with pytest.raises(InvalidParams):
            zeta0(NormParams(0, 0), method='newton')

    def test_condition_enforced(self):
        with pytest.raises(ConditionViolated):
            zeta0(NormParams(1, 0))


class TestIntervals:
    """Intervals for H and for the general sequence"""

    def test_interval_h(self):
        span = interval_H(NormParams(0, 0))
        assert span.kind == 'left-infinite-right-closed'
        assert span.finite_endpoint == pytest.approx(-4 / 27)
        assert span.contains(-100.0)
        assert not span.contains(0.0)

    def test_interval_p_identity(self):
        span = interval_P(GeneralParams(1, 0, 0, 0, 1))
        assert span.kind == 'left-infinite-right-closed'
        assert span.finite_endpoint == pytest.approx(-4 / 27)

    def test_interval_p_shift(self):
        span = interval_P(GeneralParams(1, 0, 0, 5, 1))
        assert span.finite_endpoint == pytest.approx(-4 / 27 - 5)

    def test_interval_p_orientation_flip(self):
        # c^3 / a1 < 0 reverses the half-line
        g = GeneralParams(1, 0, 2, 0, -1)
        span = interval_P(g)
        assert span.kind == 'right-infinite-left-closed'
        assert span.finite_endpoint == pytest.approx(-interval_H(NormParams(0, 2)).finite_endpoint)
        assert str(span).startswith('[')

    def test_interval_p_condition_violated(self):
        with pytest.raises(ConditionViolated):
            interval_P(GeneralParams(2, 4, 0, 0, -1))

    def test_general_zeros_inside(self):
        from quadzeros.realroots import real_roots
        from quadzeros.recurrence import gen_P

        # normalizes to (a, b) = (3/20, 2/5)
        g = GeneralParams(2, F(1, 2), -1, F(1, 2), 5)
        assert normalize(g) == NormParams(F(3, 20), F(2, 5))
        span = interval_P(g)
        for poly in gen_P(g, 14).polys[1:]:
            for r in real_roots(poly):
                assert span.contains(r, tol=1e-9)


class TestContainment:
    """Exact containment of the zeros of H_m"""

    def test_golden_pair_contained(self):
        p = NormParams(0, 1)
        seq = gen_H(p, 20)
        endpoint = zeta0(p).endpoint
        for m in range(21):
            report = check_containment(p, seq[m], m, endpoint=endpoint)
            assert report.contained
            assert report.m == m

    def test_violation_detected(self):
        from quadzeros.polycore import RationalPoly

        p = NormParams(0, 0)
        report = check_containment(p, RationalPoly((-1, 1)), with_max_root=True)
        assert not report.contained
        assert report.max_root == pytest.approx(1.0)
        assert report.notes

    def test_near_endpoint(self):
        from quadzeros.polycore import RationalPoly

        p = NormParams(0, 0)
        report = check_containment(p, RationalPoly((F(4, 27), 1)))
        assert report.contained
        assert report.near_endpoint


class TestExclusions:
    """Boundary polynomials and the sign of f* at +-1"""

    def test_lower_boundary_vanishes(self):
        assert 'lower' in vanishing_exclusions(NormParams(-2, 1))
        assert exclusion_polynomials(NormParams(-2, 1))['lower'] == 0

    def test_values(self):
        values = exclusion_polynomials(NormParams(F(1, 2), 1))
        assert values['oppsign'] == 2 - 4 + 2 + F(1, 2)
        assert values['b_plus_1_minus_a'] == F(3, 2)

    def test_oppsign_product(self):
        # f*(r) = -1 + 3r - r^2 at (0, 1), theta = 2pi/3
        assert oppsign_product(NormParams(0, 1), 2 * math.pi / 3) == pytest.approx(-5.0)

#!/usr/bin/env python3
"""
Test suite for Sturm-chain counting, isolation and refinement
"""

import math
import os
import random
import sys
from fractions import Fraction

import pytest

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadzeros.errors import NotIsolating, ZeroPolynomial
from quadzeros.polycore import RationalPoly
from quadzeros.realroots import (
    count_real,
    isolate,
    max_real_root,
    real_roots,
    refine,
    sturm,
    verdict,
)

F = Fraction


def P(*coeffs):
    return RationalPoly(tuple(coeffs))


class TestSturmChain:
    """Chain construction and sign variations"""

    def test_two_real_roots(self):
        chain = sturm(P(-1, 0, 1))
        assert chain.chain == (P(-1, 0, 1), P(0, 1), P(1))

    def test_no_real_roots(self):
        chain = sturm(P(1, 0, 1))
        assert chain.chain == (P(1, 0, 1), P(0, 1), P(-1))
        assert chain.count() == 0

    def test_repeated_root_uses_squarefree_part(self):
        chain = sturm(P(1, -2, 1))
        assert chain.chain == (P(-1, 1), P(1))
        assert chain.count() == 1

    def test_chain_is_integral_and_primitive(self):
        p = P(F(1, 3), F(-5, 2), F(7, 4), F(1, 6), 1)
        chain = sturm(p).chain
        assert len(chain) >= 3
        for q in chain:
            assert all(c.denominator == 1 for c in q.coeffs)
            assert math.gcd(*(int(c) for c in q.coeffs)) == 1

    def test_half_open_counting(self):
        p = P(-1, 0, 1)
        assert count_real(p, -1, 1) == 1
        assert count_real(p, -2, 1) == 2
        assert count_real(p, F(-1, 2), F(1, 2)) == 0
        assert count_real(p) == 2

    def test_empty_interval(self):
        with pytest.raises(ValueError):
            count_real(P(-1, 0, 1), 1, 1)

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            count_real(RationalPoly.zero())
        with pytest.raises(ZeroPolynomial):
            verdict(RationalPoly.zero())


class TestVerdict:
    """Reality verdicts with multiplicity"""

    def test_all_real(self):
        v = verdict(P(1, 5, 1))
        assert v.degree == 2
        assert v.real_count == 2
        assert v.all_real

    def test_not_all_real(self):
        # (z - 1)(z^2 + 1)
        v = verdict(P(-1, 1, -1, 1))
        assert v.degree == 3
        assert v.real_count == 1
        assert not v.all_real

    def test_multiplicity_counts(self):
        # (z + 2)^3 (z - 1)
        p = P(2, 1) ** 3 * P(-1, 1)
        v = verdict(p)
        assert v.real_count == 4
        assert v.all_real
        assert sorted(v.multiplicities) == [(1, 1), (1, 3)]
        assert len(v.isolating_intervals) == 2

    def test_constant_is_vacuously_real(self):
        v = verdict(P(5))
        assert v.degree == 0
        assert v.all_real

    def test_skip_isolation(self):
        v = verdict(P(1, 5, 1), isolate_roots=False)
        assert v.isolating_intervals == []
        assert v.as_row() == {'degree': 2, 'real_count': 2, 'all_real': True}


class TestKnownFactors:
    """Products of linear factors and root-free quadratics"""

    def setup_method(self):
        self.rng = random.Random(7)

    def _random_product(self):
        roots = [F(self.rng.randint(-20, 20), self.rng.randint(1, 6)) for _ in range(self.rng.randint(1, 5))]
        quadratics = []
        for _ in range(self.rng.randint(0, 2)):
            # z^2 + s z + t with t > s^2/4 has no real zero
            s = F(self.rng.randint(-5, 5), self.rng.randint(1, 3))
            t = s * s / 4 + F(self.rng.randint(1, 9), self.rng.randint(1, 4))
            quadratics.append(P(t, s, 1))
        p = P(self.rng.choice([-3, 1, F(2, 5)]))
        for r in roots:
            p = p * P(-r, 1)
        for q in quadratics:
            p = p * q
        return p, roots, quadratics

    def test_random_products(self):
        for _ in range(30):
            p, roots, quadratics = self._random_product()
            v = verdict(p)
            assert v.degree == len(roots) + 2 * len(quadratics)
            assert v.real_count == len(roots)
            assert v.all_real == (not quadratics)
            assert count_real(p) == len(set(roots))
            assert len(v.isolating_intervals) == len(set(roots))
            for (lo, hi), r in zip(v.isolating_intervals, sorted(set(roots))):
                assert lo < r <= hi

    def test_nonreal_factor_keeps_count(self):
        samples = [P(-6, 11, -6, 1), P(1, 5, 1), P(2, 1) ** 3 * P(-1, 1), P(-2, 0, 1), P(F(1, 3), -1)]
        for p in samples:
            q = p * P(1, 0, 1)
            assert count_real(q) == count_real(p)
            assert count_real(q, -3, F(5, 2)) == count_real(p, -3, F(5, 2))
            assert verdict(q).real_count == verdict(p).real_count
            assert not verdict(q).all_real


class TestIsolationAndRefinement:
    """Isolating intervals and bisection"""

    def setup_method(self):
        self.cubic = P(-6, 11, -6, 1)

    def test_intervals_isolate(self):
        intervals = isolate(self.cubic)
        assert len(intervals) == 3
        for lo, hi in intervals:
            assert lo < hi
            assert count_real(self.cubic, lo, hi) == 1
        for (_, hi), (lo, _) in zip(intervals, intervals[1:]):
            assert hi <= lo

    def test_refine_sqrt_two(self):
        assert refine(P(-2, 0, 1), (1, 2)) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_refine_exact_endpoint(self):
        # (z + 1)(z - 3)
        assert refine(P(-3, -2, 1), (-1, 0)) == -1.0

    def test_refine_requires_sign_change(self):
        with pytest.raises(NotIsolating):
            refine(P(-2, 0, 1), (2, 3))

    def test_real_roots(self):
        assert real_roots(self.cubic) == pytest.approx([1, 2, 3], abs=1e-11)
        assert real_roots(P(1, 0, 1)) == []

    def test_max_real_root(self):
        assert max_real_root(P(1, 5, 1)) == pytest.approx((-5 + math.sqrt(21)) / 2, abs=1e-11)
        assert max_real_root(P(1, 0, 1)) is None
        assert max_real_root(self.cubic) == pytest.approx(3, abs=1e-11)

"""
Exact real-root counting and isolation with Sturm chains
All arithmetic is over the rationals; floats appear only in refined outputs.
The remainder sequence runs on sympy's dense integer routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from sympy.polys.densearith import dup_neg, dup_prem
from sympy.polys.densebasic import dup_degree, dup_LC
from sympy.polys.densetools import dup_clear_denoms, dup_diff, dup_primitive
from sympy.polys.domains import QQ, ZZ
from sympy.polys.sqfreetools import dup_sqf_part

from quadzeros.errors import NotIsolating, ZeroPolynomial
from quadzeros.polycore import RationalPoly, as_fraction, squarefree_decomposition

Bound = Union[Fraction, float]
Interval = Tuple[Fraction, Fraction]


def squarefree_part(p: RationalPoly) -> RationalPoly:
    """Monic squarefree part; constants are returned unchanged"""
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if p.degree() < 1:
        return p
    return RationalPoly.from_dense(dup_sqf_part(p.to_dense(), QQ))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class SturmChain:
    chain: Tuple[RationalPoly, ...]

    def signs_at(self, x: Bound) -> List[int]:
        if isinstance(x, float) and math.isinf(x):
            direction = 1 if x > 0 else -1
            return [_sign(q.leading()) * direction ** q.degree() for q in self.chain]
        return [_sign(q(x)) for q in self.chain]

    def variations(self, x: Bound) -> int:
        nonzero = [s for s in self.signs_at(x) if s != 0]
        return sum(1 for s, t in zip(nonzero, nonzero[1:]) if s != t)

    def count(self, lo: Bound = -math.inf, hi: Bound = math.inf) -> int:
        """Distinct real roots in (lo, hi]"""
        return self.variations(lo) - self.variations(hi)

    @property
    def base(self) -> RationalPoly:
        return self.chain[0]


def _primitive_integer(p: RationalPoly) -> list:
    # denominators are cleared by a positive factor and the content is positive
    _, f = dup_clear_denoms(p.to_dense(), QQ, ZZ, convert=True)
    return dup_primitive(f, ZZ)[1]


def sturm(p: RationalPoly) -> SturmChain:
    """Sturm chain of the squarefree part over Z: s, s', then -prem with the content divided out

    prem(f, g) = lc(g)^(deg f - deg g + 1) rem(f, g); only the sign of that
    factor is undone, so every member is a positive multiple of the classical chain.
    """
    s = squarefree_part(p)
    if s.degree() < 1:
        return SturmChain((s,))
    f = _primitive_integer(s)
    chain = [f, dup_primitive(dup_diff(f, 1, ZZ), ZZ)[1]]
    while True:
        g, h = chain[-2], chain[-1]
        rem = dup_prem(g, h, ZZ)
        if not rem:
            break
        if dup_LC(h, ZZ) < 0 and (dup_degree(g) - dup_degree(h) + 1) % 2:
            rem = dup_neg(rem, ZZ)
        chain.append(dup_neg(dup_primitive(rem, ZZ)[1], ZZ))
    return SturmChain(tuple(RationalPoly.from_dense(q) for q in chain))


def _as_bound(x) -> Bound:
    if isinstance(x, float) and math.isinf(x):
        return x
    return as_fraction(x)


def count_real(p: RationalPoly, lo=-math.inf, hi=math.inf) -> int:
    """Number of distinct real roots of p in (lo, hi]"""
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    lo, hi = _as_bound(lo), _as_bound(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    return sturm(p).count(lo, hi)


def cauchy_bound(p: RationalPoly) -> Fraction:
    """Every root satisfies |r| < 1 + max |c_k / c_n|"""
    lead = abs(p.leading())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(chain: SturmChain, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    k = 3
    while chain.base(mid) == 0:
        mid = (lo + hi) / 2 + (hi - lo) / 2 ** k
        k += 1
    return mid


def isolate(p: RationalPoly) -> List[Interval]:
    """Disjoint rational intervals (lo, hi), each holding exactly one distinct real root, ascending"""
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    chain = sturm(p)
    if chain.base.degree() < 1:
        return []
    bound = cauchy_bound(chain.base)
    out: List[Interval] = []
    stack = [(-bound, bound, chain.count(-bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = _split_point(chain, lo, hi)
        left = chain.count(lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    return sorted(out)


@dataclass(frozen=True)
class RealityVerdict:
    degree: int
    real_count: int
    all_real: bool
    isolating_intervals: List[Interval] = field(default_factory=list)
    multiplicities: List[Tuple[int, int]] = field(default_factory=list)

    def as_row(self) -> dict:
        return {
            'degree': self.degree,
            'real_count': self.real_count,
            'all_real': self.all_real,
        }


def verdict(p: RationalPoly, isolate_roots: bool = True) -> RealityVerdict:
    """Reality verdict counting roots with multiplicity

    multiplicities lists (distinct real roots of the factor, multiplicity) per
    squarefree factor. Pass isolate_roots=False to skip interval isolation.
    """
    if p.is_zero():
        raise ZeroPolynomial("verdict of the zero polynomial")
    degree = p.degree()
    if degree == 0:
        return RealityVerdict(0, 0, True)
    real_count = 0
    multiplicities = []
    for factor, mult in squarefree_decomposition(p):
        distinct = sturm(factor).count()
        multiplicities.append((distinct, mult))
        real_count += distinct * mult
    intervals = isolate(p) if isolate_roots else []
    return RealityVerdict(degree, real_count, real_count == degree, intervals, multiplicities)


def refine(p: RationalPoly, interval: Tuple, tol: float = 1e-12) -> float:
    """Bisect an isolating interval down to width tol"""
    lo, hi = (as_fraction(x) for x in interval)
    if lo > hi:
        lo, hi = hi, lo
    s = squarefree_part(p)
    sl, sh = s.sign_at(lo), s.sign_at(hi)
    if sl == 0:
        return float(lo)
    if sh == 0:
        return float(hi)
    if sl == sh:
        raise NotIsolating(f"no sign change on [{lo}, {hi}]")
    width = Fraction(tol)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = s.sign_at(mid)
        if sm == 0:
            return float(mid)
        if sm == sl:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def real_roots(p: RationalPoly, tol: float = 1e-12) -> List[float]:
    """Refined distinct real roots, ascending"""
    return [refine(p, iv, tol) for iv in isolate(p)]


def max_real_root(p: RationalPoly, tol: float = 1e-12) -> Optional[float]:
    """Largest real root by bisecting only the topmost occupied cell"""
    if p.is_zero():
        raise ZeroPolynomial("max root of the zero polynomial")
    chain = sturm(p)
    if chain.base.degree() < 1 or chain.count() == 0:
        return None
    bound = cauchy_bound(chain.base)
    lo, hi = -bound, bound
    while chain.count(lo, hi) > 1:
        mid = _split_point(chain, lo, hi)
        if chain.count(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return refine(chain.base, (lo, hi), tol)

"""
Parameter reduction, reality condition and the zero-containing interval
All zeros of H_m lie in (-inf, zeta0^2 / (1 - 2 zeta0)^3] when the reality
condition holds; general parameters map onto that interval affinely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from loguru import logger

from quadzeros.errors import ConditionViolated, InvalidParams, NoRootInRegion
from quadzeros.polycore import RationalPoly, complex_roots
from quadzeros.realroots import count_real, isolate, max_real_root, refine, squarefree_part
from quadzeros.recurrence import GeneralParams, NormParams

QUARTER = Fraction(1, 4)


def normalize(g: GeneralParams) -> NormParams:
    """a = b0/c^2 - b1 a0 / (c^2 a1), b = -b1 c / a1"""
    if not isinstance(g, GeneralParams):
        raise InvalidParams(f"expected GeneralParams, got {type(g).__name__}")
    a = g.b0 / g.c ** 2 - g.b1 * g.a0 / (g.c ** 2 * g.a1)
    b = -g.b1 * g.c / g.a1
    return NormParams(a, b)


def reality_condition(p: NormParams) -> bool:
    return 1 + p.a + p.b >= 0 and 9 - 27 * p.a + p.b >= 0


def require_condition(p: NormParams) -> None:
    if not reality_condition(p):
        raise ConditionViolated(
            f"(a, b) = ({p.a}, {p.b}) violates 1+a+b >= 0 and 9-27a+b >= 0"
        )


def endpoint_cubic(p: NormParams) -> RationalPoly:
    """(8a-2) z^3 + (-12a+b+5) z^2 + (6a-2) z - a"""
    a, b = p.a, p.b
    return RationalPoly((-a, 6 * a - 2, -12 * a + b + 5, 8 * a - 2))


def endpoint_of(zeta: float) -> float:
    if math.isinf(zeta):
        return 0.0
    return zeta * zeta / (1 - 2 * zeta) ** 3


@dataclass(frozen=True)
class Zeta0Result:
    zeta0: float
    endpoint: float
    degenerate: bool
    bracket: Optional[Tuple[Fraction, Fraction]] = None
    exact: Optional[Fraction] = None

    def as_row(self) -> dict:
        return {
            'zeta0': self.zeta0,
            'endpoint': self.endpoint,
            'degenerate': self.degenerate,
            'zeta0_exact': None if self.exact is None else str(self.exact),
        }


def _clip_to_region(cubic: RationalPoly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    # cubic(+-1) != 0 here, so +-1 can serve as a bracket end
    for edge in (Fraction(-1), Fraction(1)):
        if lo < edge < hi:
            if cubic.sign_at(lo) != cubic.sign_at(edge):
                hi = edge
            else:
                lo = edge
    return lo, hi


def _zeta0_exact(cubic: RationalPoly) -> Tuple[Fraction, Fraction, Optional[Fraction]]:
    on_edge = [e for e in (Fraction(-1), Fraction(1)) if cubic(e) == 0]
    inside = count_real(cubic, -math.inf, -1) + count_real(cubic, 1, math.inf)
    if Fraction(1) in on_edge:
        inside += 1
    if inside != 1:
        raise NoRootInRegion(f"{inside} distinct zeros of {cubic} with |zeta| >= 1")
    if on_edge:
        return on_edge[0], on_edge[0], on_edge[0]
    base = squarefree_part(cubic)
    for lo, hi in isolate(base):
        lo, hi = _clip_to_region(base, lo, hi)
        if hi <= -1 or lo >= 1:
            return lo, hi, None
    raise NoRootInRegion(f"isolation of {cubic} found no zero with |zeta| >= 1")


def _zeta0_float(cubic: RationalPoly, tol: float = 1e-10) -> float:
    roots = complex_roots(cubic.to_float()).real_roots(imag_tol=1e-6)
    picked: List[float] = []
    for r in sorted(roots):
        if abs(r) < 1 - tol:
            continue
        if picked and abs(r - picked[-1]) <= 1e-6 * max(1.0, abs(r)):
            continue
        picked.append(r)
    if len(picked) != 1:
        raise NoRootInRegion(f"float path found {len(picked)} zeros with |zeta| >= 1")
    return picked[0]


def zeta0(p: NormParams, method: str = 'exact') -> Zeta0Result:
    """The unique real zero of the endpoint cubic with |zeta| >= 1, and the endpoint it fixes

    At a = 1/4 the cubic loses its leading term; zeta0 is +inf and the
    endpoint is the continuous limit 0.
    """
    require_condition(p)
    if p.a == QUARTER:
        logger.warning(f"a = 1/4 is degenerate for b = {p.b}: zeta0 = +inf, endpoint 0")
        return Zeta0Result(math.inf, 0.0, True)
    cubic = endpoint_cubic(p)
    if method == 'float':
        z0 = _zeta0_float(cubic)
        return Zeta0Result(z0, endpoint_of(z0), False)
    if method != 'exact':
        raise InvalidParams(f"unknown zeta0 method {method!r}")

    lo, hi, exact = _zeta0_exact(cubic)
    if exact is not None:
        z0 = float(exact)
    else:
        z0 = refine(cubic, (lo, hi), tol=1e-16 * max(1.0, float(abs(lo)), float(abs(hi))))
    return Zeta0Result(z0, endpoint_of(z0), False, (lo, hi), exact)


def closed_form_zeta0(a) -> float:
    """zeta0 for b = 0: (2a - 1 - sqrt(1 - 3a)) / (4a - 1)"""
    a = float(a)
    if a > 1 / 3 or a == 0.25:
        raise InvalidParams(f"closed form needs a <= 1/3 and a != 1/4, got {a}")
    return (2 * a - 1 - math.sqrt(1 - 3 * a)) / (4 * a - 1)


@dataclass(frozen=True)
class IntervalSpec:
    """A closed half-line: (-inf, e] or [e, inf)"""

    kind: str
    finite_endpoint: float
    degenerate: bool = False
    zeta0: Optional[float] = None

    def contains(self, x: float, tol: float = 0.0) -> bool:
        if self.kind == 'left-infinite-right-closed':
            return x <= self.finite_endpoint + tol
        return x >= self.finite_endpoint - tol

    def __str__(self) -> str:
        if self.kind == 'left-infinite-right-closed':
            return f"(-inf, {self.finite_endpoint:.17g}]"
        return f"[{self.finite_endpoint:.17g}, inf)"

    def as_row(self) -> dict:
        return {
            'kind': self.kind,
            'endpoint': self.finite_endpoint,
            'zeta0': self.zeta0,
            'degenerate': self.degenerate,
            'interval': str(self),
        }


def interval_H(p: NormParams) -> IntervalSpec:
    z = zeta0(p)
    return IntervalSpec('left-infinite-right-closed', z.endpoint, z.degenerate, z.zeta0)


def interval_P(g: GeneralParams) -> IntervalSpec:
    """Image of interval_H under z -> (c^3/a1) z - a0/a1"""
    base = interval_H(normalize(g))
    s = g.c ** 3 / g.a1
    shift = -g.a0 / g.a1
    endpoint = float(s) * base.finite_endpoint + float(shift)
    kind = base.kind if s > 0 else 'right-infinite-left-closed'
    return IntervalSpec(kind, endpoint, base.degenerate, base.zeta0)


def exclusion_polynomials(p: NormParams) -> Dict[str, Fraction]:
    """Quantities whose zeros mark parameter-boundary configurations"""
    a, b = p.a, p.b
    return {
        'oppsign': 2 - 8 * a + 8 * a * a + a * b,
        'b_plus_1_minus_a': b + 1 - a,
        'upper': 9 - 27 * a + b,
        'lower': 1 + a + b,
    }


def vanishing_exclusions(p: NormParams) -> List[str]:
    return [name for name, value in exclusion_polynomials(p).items() if value == 0]


def oppsign_product(p: NormParams, theta: float) -> float:
    """f*(-1, theta) * f*(1, theta); negative means a sign change across (-1, 1)"""
    from quadzeros.thetaengine import fstar_poly

    f = fstar_poly(p, theta)
    return f(-1.0) * f(1.0)


@dataclass
class ContainmentReport:
    m: int
    endpoint: float
    contained: bool
    near_endpoint: bool
    max_root: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def as_row(self) -> dict:
        return {
            'm': self.m,
            'endpoint': self.endpoint,
            'contained': self.contained,
            'near_endpoint': self.near_endpoint,
            'max_root': self.max_root,
        }


def check_containment(
    p: NormParams,
    h: RationalPoly,
    m: int = -1,
    tol: float = 1e-9,
    endpoint: Optional[float] = None,
    with_max_root: bool = False,
) -> ContainmentReport:
    """Exact check that no real zero of h exceeds endpoint + tol

    Zeros in (endpoint - tol, endpoint + tol] are reported as near-endpoint
    hits rather than violations.
    """
    if endpoint is None:
        endpoint = zeta0(p).endpoint
    if h.degree() < 1:
        return ContainmentReport(m, endpoint, True, False)
    above = count_real(h, Fraction(endpoint + tol), math.inf)
    near = count_real(h, Fraction(endpoint - tol), math.inf) > above
    report = ContainmentReport(m, endpoint, above == 0, near)
    if with_max_root:
        report.max_root = max_real_root(h)
    if near:
        logger.warning(f"H_{m} has a zero within {tol:g} of the endpoint {endpoint:.17g}")
    if above:
        report.notes.append(f"{above} zero(s) above endpoint + {tol:g}")
        logger.error(f"H_{m} at (a, b) = ({p.a}, {p.b}) has {above} zero(s) beyond {endpoint:.17g}")
    return report

"""
Theta parametrization of the zeros of H_m

For theta in (pi/2, pi) the denominator D(t, z) = 1 + t + (a - b z) t^2 + z t^3
factors with zeros tau e^{+-i theta} and zeta tau, where 1/zeta is the unique
root in (-1, 1) of

    f*(r, theta) = -a r^3 + (2c - 6ac) r^2 + (1 + b + 4c^2 - 12ac^2) r + 2c - 8ac^3,

c = cos(theta). Then tau = -1/zeta - 2c and z = -1/(zeta tau^3). Zeros of H_m
correspond to zeros of g_m(theta) on the subintervals J_h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from quadzeros.errors import (
    AsymptoteProximity,
    BranchAmbiguity,
    FactorizationMismatch,
    PreconditionFailed,
    QuadZerosError,
)
from quadzeros.parallel import ordered_map
from quadzeros.polycore import FloatPoly, complex_roots
from quadzeros.recurrence import NormParams

HALF_PI = math.pi / 2
ASYMPTOTE_RADIUS = 1e-9
UNIT_MARGIN = 1e-12
END_SHRINK = 1e-9
TAU_FLOOR = 1e-12


def fstar_coefficients(a: float, b: float, c: float) -> Tuple[float, float, float, float]:
    """Ascending coefficients of f*(., theta) at c = cos(theta)"""
    return (
        2 * c - 8 * a * c ** 3,
        1 + b + 4 * c * c - 12 * a * c * c,
        2 * c - 6 * a * c,
        -a,
    )


def fstar_poly(p: NormParams, theta: float) -> FloatPoly:
    return FloatPoly(fstar_coefficients(p.af, p.bf, math.cos(theta)))


def denominator_coefficients(p: NormParams, z: complex) -> Tuple[complex, ...]:
    """D(t, z) = 1 + t + (a - b z) t^2 + z t^3, ascending in t"""
    return (1.0, 1.0, p.af - p.bf * z, z)


def asymptote(p: NormParams) -> Optional[float]:
    """theta where 1/zeta vanishes; only for a > 1/4"""
    if p.a <= 0.25:
        return None
    return math.acos(-1 / (2 * math.sqrt(p.af)))


def _check_theta(theta: float) -> None:
    if not HALF_PI < theta < math.pi:
        raise PreconditionFailed(f"theta={theta!r} is outside (pi/2, pi)")


def rho_branch(p: NormParams, theta: float) -> float:
    """The unique real root of f*(., theta) in (-1, 1)"""
    _check_theta(theta)
    theta_a = asymptote(p)
    if theta_a is not None and abs(theta - theta_a) < ASYMPTOTE_RADIUS:
        raise AsymptoteProximity(f"theta={theta:.17g} within {ASYMPTOTE_RADIUS:g} of the asymptote {theta_a:.17g}")
    poly = fstar_poly(p, theta).trimmed()
    roots = complex_roots(poly).real_roots(imag_tol=1e-9)
    inside = [r for r in roots if abs(r) < 1 - UNIT_MARGIN]
    if len(inside) != 1:
        raise BranchAmbiguity(
            f"f* has {len(inside)} real roots in (-1, 1) at theta={theta:.17g}, (a, b)=({p.a}, {p.b})"
        )
    rho = inside[0]
    if rho == 0.0:
        raise AsymptoteProximity(f"1/zeta vanishes at theta={theta:.17g}")
    return rho


def zeta_branch(p: NormParams, theta: float) -> float:
    return 1 / rho_branch(p, theta)


@dataclass(frozen=True)
class ThetaSample:
    theta: float
    zeta: float
    tau: float
    z: float
    residual: float

    def as_row(self) -> dict:
        return {
            'theta': self.theta,
            'zeta': self.zeta,
            'tau': self.tau,
            'z': self.z,
            'residual': self.residual,
        }

    def denominator_roots(self) -> List[complex]:
        return [
            self.tau * complex(math.cos(self.theta), math.sin(self.theta)),
            self.tau * complex(math.cos(self.theta), -math.sin(self.theta)),
            complex(self.zeta * self.tau),
        ]


def _scaled_residual(coeffs: Sequence[complex], t: complex) -> float:
    value = 0j
    for ck in reversed(coeffs):
        value = value * t + ck
    scale = sum(abs(ck) * abs(t) ** k for k, ck in enumerate(coeffs))
    return abs(value) / scale if scale else abs(value)


def _branch_point(p: NormParams, theta: float) -> Tuple[float, float, float]:
    """(rho, tau, z) at theta; tau must be positive beyond rounding"""
    rho = rho_branch(p, theta)
    tau = -rho - 2 * math.cos(theta)
    if not tau > TAU_FLOOR:
        raise BranchAmbiguity(f"tau = {tau!r} is not positive at theta={theta:.17g}, (a, b)=({p.a}, {p.b})")
    return rho, tau, -rho / tau ** 3


def z_of_theta(p: NormParams, theta: float) -> float:
    return _branch_point(p, theta)[2]


def sample(p: NormParams, theta: float, tol: float = 1e-8) -> ThetaSample:
    """zeta, tau and z at theta, with the factorization of D(t, z) checked by back-substitution"""
    rho, tau, z = _branch_point(p, theta)
    s = ThetaSample(theta, 1 / rho, tau, z, 0.0)
    coeffs = denominator_coefficients(p, z)
    residual = max(_scaled_residual(coeffs, t) for t in s.denominator_roots())
    if residual > tol:
        raise FactorizationMismatch(f"residual {residual:.3e} at theta={theta:.17g}")
    return ThetaSample(theta, s.zeta, tau, z, residual)


def _rho_power(rho: float, n: int) -> float:
    # |rho| < 1; evaluated in log space, underflow to 0 is harmless
    sign = -1.0 if (rho < 0 and n % 2) else 1.0
    return sign * math.exp(n * math.log(abs(rho)))


def g_m(p: NormParams, theta: float, m: int) -> float:
    """(zeta - c) sin((m+1)theta)/sin(theta) - cos((m+1)theta) + zeta^{-(m+1)}

    Only defined where the branch has tau > 0; elsewhere BranchAmbiguity is raised.
    """
    if m < 0:
        raise PreconditionFailed(f"m must be >= 0, got {m}")
    rho, _, _ = _branch_point(p, theta)
    c = math.cos(theta)
    k = m + 1
    return (1 / rho - c) * math.sin(k * theta) / math.sin(theta) - math.cos(k * theta) + _rho_power(rho, k)


def _g_or_nan(p: NormParams, m: int, theta: float) -> float:
    try:
        return g_m(p, theta, m)
    except (BranchAmbiguity, AsymptoteProximity):
        return math.nan


def subintervals(m: int) -> List[Tuple[int, float, float]]:
    """(h, lo, hi) for J_h, h = floor((m+1)/2)+1 .. m+1; empty for m = 0"""
    if m <= 0:
        return []
    first = (m + 1) // 2 + 1
    out = []
    for h in range(first, m + 2):
        lo = HALF_PI if h == first else (h - 1) * math.pi / (m + 1)
        out.append((h, lo, h * math.pi / (m + 1)))
    return out


@dataclass
class SubintervalReport:
    h: int
    interval: Tuple[float, float]
    zero_count: int
    contains_asymptote: bool
    theta_zeros: List[float] = field(default_factory=list)

    def as_row(self) -> dict:
        return {
            'h': self.h,
            'theta_lo': self.interval[0],
            'theta_hi': self.interval[1],
            'zero_count': self.zero_count,
            'contains_asymptote': self.contains_asymptote,
        }


def _clustered_grid(lo: float, hi: float, n: int) -> np.ndarray:
    # Chebyshev-Lobatto nodes: dense near both ends of the piece
    k = np.arange(n)
    return (lo + hi) / 2 - (hi - lo) / 2 * np.cos(np.pi * k / (n - 1))


def _bisect(p: NormParams, m: int, lo: float, hi: float, glo: float, xtol: float = 1e-14) -> float:
    for _ in range(200):
        if hi - lo <= xtol:
            break
        mid = (lo + hi) / 2
        gm = _g_or_nan(p, m, mid)
        if gm == 0.0:
            return mid
        if math.isnan(gm):
            break
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return (lo + hi) / 2


def _pieces(p: NormParams, lo: float, hi: float) -> Tuple[List[Tuple[float, float]], bool]:
    lo, hi = lo + END_SHRINK, hi - END_SHRINK
    theta_a = asymptote(p)
    if theta_a is not None and lo < theta_a < hi:
        return [(lo, theta_a - ASYMPTOTE_RADIUS * 10), (theta_a + ASYMPTOTE_RADIUS * 10, hi)], True
    return [(lo, hi)], False


def _piece_zeros(p: NormParams, m: int, lo: float, hi: float, grid: int, workers: Optional[int]) -> List[float]:
    n = max(16, int(grid * (hi - lo) / HALF_PI))
    thetas = _clustered_grid(lo, hi, n)
    values = ordered_map(partial(_g_or_nan, p, m), thetas.tolist(), workers)
    zeros = []
    for i in range(n - 1):
        g0, g1 = values[i], values[i + 1]
        if math.isnan(g0) or math.isnan(g1):
            continue
        if g0 == 0.0:
            zeros.append(float(thetas[i]))
        elif g0 * g1 < 0:
            zeros.append(_bisect(p, m, float(thetas[i]), float(thetas[i + 1]), g0))
    # a bisection stopped by an invalid midpoint has no image in z
    return [t for t in zeros if not math.isnan(_z_or_nan(p, t))]


def count_g_zeros(p: NormParams, m: int, grid: int = 4096, workers: Optional[int] = None) -> List[SubintervalReport]:
    """Sign changes of g_m on each J_h, never counting across the asymptote"""
    if m < 6:
        logger.debug(f"m={m} < 6: counts are reported without the floor(m/2) guarantee")
    reports = []
    for h, lo, hi in subintervals(m):
        pieces, split = _pieces(p, lo, hi)
        zeros: List[float] = []
        for plo, phi in pieces:
            zeros.extend(_piece_zeros(p, m, plo, phi, grid, workers))
        reports.append(SubintervalReport(h, (lo, hi), len(zeros), split, sorted(zeros)))
    total = sum(r.zero_count for r in reports)
    if m >= 6 and total < m // 2:
        logger.warning(f"g_{m} shows {total} zeros at (a, b)=({p.a}, {p.b}), expected at least {m // 2}")
    return reports


def theta_zeros(
    p: NormParams,
    m: int,
    grid: int = 4096,
    workers: Optional[int] = None,
    theta_min: float = HALF_PI,
) -> List[float]:
    """Refined zeros of g_m on the J_h, restricted to theta >= theta_min"""
    zeros: List[float] = []
    for _, lo, hi in subintervals(m):
        if hi <= theta_min:
            continue
        pieces, _ = _pieces(p, max(lo, theta_min), hi)
        for plo, phi in pieces:
            zeros.extend(_piece_zeros(p, m, plo, phi, grid, workers))
    return sorted(zeros)


def theta_for_z(p: NormParams, target: float, xtol: float = 1e-13) -> float:
    """theta with z(theta) = target, by bisection on the increasing map z

    Where the branch is undefined (tau <= 0, as on (pi/2, 2pi/3) for b = 0)
    the search moves toward larger theta.
    """
    lo, hi = HALF_PI + 1e-12, math.pi - 1e-12
    for _ in range(200):
        if hi - lo <= xtol:
            break
        mid = (lo + hi) / 2
        z = _z_or_nan(p, mid)
        if math.isnan(z):
            # step over the asymptote window before giving up on this side
            z = _z_or_nan(p, mid + 10 * ASYMPTOTE_RADIUS)
        if math.isnan(z) or z < target:
            lo = mid
        else:
            hi = mid
    return lo


def _z_or_nan(p: NormParams, theta: float) -> float:
    try:
        return z_of_theta(p, theta)
    except QuadZerosError:
        return math.nan


def z_profile(p: NormParams, grid: int = 4096, margin: float = 1e-6, workers: Optional[int] = None) -> List[Tuple[np.ndarray, np.ndarray]]:
    """(theta, z) arrays on each side of the asymptote, ends trimmed by margin"""
    lo, hi = HALF_PI + margin, math.pi - margin
    thetas = np.linspace(lo, hi, grid)
    theta_a = asymptote(p)
    if theta_a is None:
        sides = [thetas]
    else:
        sides = [thetas[thetas < theta_a - margin], thetas[thetas > theta_a + margin]]
    out = []
    for side in sides:
        if len(side) == 0:
            continue
        zs = np.array(ordered_map(partial(_z_or_nan, p), side.tolist(), workers))
        keep = ~np.isnan(zs)
        out.append((side[keep], zs[keep]))
    return out


def monotonicity_scan(p: NormParams, grid: int = 10_000, workers: Optional[int] = None) -> float:
    """Smallest forward difference of z(theta); positive means strictly increasing"""
    worst = math.inf
    for _, zs in z_profile(p, grid, workers=workers):
        if len(zs) > 1:
            worst = min(worst, float(np.min(np.diff(zs))))
    if worst <= 0:
        logger.warning(f"z(theta) is not increasing at (a, b)=({p.a}, {p.b}): min difference {worst:.3e}")
    return worst


@dataclass(frozen=True)
class EndpointConvergence:
    offsets: Tuple[float, ...]
    errors: Tuple[float, ...]
    order: float
    endpoint: float

    def as_rows(self) -> List[dict]:
        return [{'offset': o, 'error': e} for o, e in zip(self.offsets, self.errors)]


def endpoint_convergence(p: NormParams, offsets: Sequence[float] = (1e-2, 1e-3, 1e-4)) -> EndpointConvergence:
    """|z(pi - eps) - endpoint| per offset and the fitted order in eps"""
    from quadzeros.zerolocus import zeta0

    endpoint = zeta0(p).endpoint
    errors = tuple(abs(z_of_theta(p, math.pi - eps) - endpoint) for eps in offsets)
    usable = [(e, err) for e, err in zip(offsets, errors) if err > 0]
    if len(usable) >= 2:
        order = float(np.polyfit(np.log([u[0] for u in usable]), np.log([u[1] for u in usable]), 1)[0])
    else:
        order = math.inf
    return EndpointConvergence(tuple(offsets), errors, order, endpoint)

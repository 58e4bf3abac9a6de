"""
Limit points of the zeros of H_m

z is a limit point of zeros iff the two smallest-modulus zeros of
D(t, z) = (1 + t + a t^2) + z t^2 (t - b) tie. When the reality condition fails,
a nonreal such z exists; the witness searches below construct one from a
nonreal root of f* inside the unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from loguru import logger

from quadzeros.config import load_settings
from quadzeros.errors import (
    PreconditionFailed,
    QuadZerosError,
    UniqueRootViolation,
    WitnessSearchFailed,
)
from quadzeros.parallel import ordered_map
from quadzeros.polycore import RationalPoly, cubic_discriminant, solve_coefficients
from quadzeros.realroots import isolate, refine, verdict
from quadzeros.recurrence import NormParams, gen_H
from quadzeros.thetaengine import HALF_PI, UNIT_MARGIN, denominator_coefficients, fstar_coefficients
from quadzeros.zerolocus import reality_condition

SCAN_STEPS = 64


@dataclass(frozen=True)
class DominanceResult:
    z: complex
    moduli: tuple
    gap: float
    in_limit_set: bool

    def as_row(self) -> dict:
        return {
            'z_re': self.z.real,
            'z_im': self.z.imag,
            'modulus_0': self.moduli[0],
            'modulus_1': self.moduli[1],
            'modulus_2': self.moduli[2],
            'gap': self.gap,
            'in_limit_set': self.in_limit_set,
        }


def dominance(p: NormParams, z: complex, tol: float = 1e-8) -> DominanceResult:
    """Equal-modulus test on the two smallest zeros of D(t, z), relative to their modulus"""
    z = complex(z)
    if z == 0:
        raise PreconditionFailed("dominance needs z != 0 so that D(t, z) is cubic")
    if tol <= 0:
        raise PreconditionFailed(f"tol must be positive, got {tol}")
    # D has real coefficients: solve at the upper half-plane point so z and conj(z) agree exactly
    canonical = z.conjugate() if z.imag < 0 else z
    coeffs = denominator_coefficients(p, canonical)
    if canonical.imag == 0:
        coeffs = tuple(c.real if isinstance(c, complex) else c for c in coeffs)
    roots = solve_coefficients(coeffs, tol=load_settings().tol).roots
    moduli = tuple(sorted(abs(r) for r in roots))
    gap = moduli[1] - moduli[0]
    return DominanceResult(z, moduli, gap, gap < tol * max(moduli[1], 1e-300))


def real_axis_scan(p: NormParams, zs: Sequence[float], tol: float = 1e-8, workers: Optional[int] = None) -> List[DominanceResult]:
    return ordered_map(partial(dominance, p, tol=tol), list(zs), workers)


@dataclass
class WitnessResult:
    regime: str
    witness_z: complex
    certificate: Dict[str, object] = field(default_factory=dict)
    confirmed_m: Optional[int] = None

    def as_row(self) -> dict:
        row = {
            'regime': self.regime,
            'witness_re': self.witness_z.real,
            'witness_im': self.witness_z.imag,
            'confirmed_m': self.confirmed_m,
        }
        for key, value in self.certificate.items():
            if isinstance(value, complex):
                row[f'{key}_re'] = value.real
                row[f'{key}_im'] = value.imag
            else:
                row[key] = value
        return row


def _witness_from_root(rho: complex, c: float) -> complex:
    tau = -rho - 2 * c
    return -rho / tau ** 3


def _nonreal_inside(p: NormParams, c: float) -> Optional[complex]:
    coeffs = fstar_coefficients(p.af, p.bf, c)
    roots = solve_coefficients(coeffs).roots
    for r in roots:
        if r.imag > 1e-12 * max(1.0, abs(r)) and abs(r) < 1:
            return r
    return None


def _search(p: NormParams, thetas: Sequence[float], regime: str, extra: Dict[str, object]) -> WitnessResult:
    for theta in thetas:
        if theta == HALF_PI:
            continue
        c = math.cos(theta)
        rho = _nonreal_inside(p, c)
        if rho is None:
            continue
        z = _witness_from_root(rho, c)
        if abs(z.imag) <= 1e-12 * abs(z):
            continue
        certificate = {'zeta_star': rho, 'theta_star': theta, 'zeta_star_modulus': abs(rho)}
        certificate.update(extra)
        logger.success(f"Witness z = {z:.12g} at theta* = {theta:.12g} ({regime})")
        return WitnessResult(regime, z, certificate)
    raise WitnessSearchFailed(f"no nonreal f* root inside the unit disk after {len(thetas)} steps ({regime})")


def witness_below(p: NormParams, steps: int = SCAN_STEPS) -> WitnessResult:
    """Witness for a < -b - 1, found near theta = pi/2 where f* has roots 0, +-i sqrt(-(1+b)/a)"""
    if not p.a < -p.b - 1:
        raise PreconditionFailed(f"witness_below needs a < -b-1, got (a, b) = ({p.a}, {p.b})")
    radius = math.sqrt(-(1 + p.bf) / p.af)
    if not radius < 1:
        raise WitnessSearchFailed(f"sqrt(-(1+b)/a) = {radius} is not inside the unit disk")
    thetas = [HALF_PI + 1e-2 * 0.5 ** k for k in range(steps)]
    return _search(p, thetas, 'a_below', {'pi_half_radius': radius})


def _fstar_in_c(p: NormParams):
    # coefficients of f* as polynomials in c = cos(theta): A3 r^3 + A2 r^2 + A1 r + A0
    a, b = p.a, p.b
    return (
        RationalPoly((-a,)),
        RationalPoly((0, 2 - 6 * a)),
        RationalPoly((1 + b, 0, 4 - 12 * a)),
        RationalPoly((0, 2, 0, -8 * a)),
    )


def _even_part_in_x(poly_c: RationalPoly) -> RationalPoly:
    if any(coef != 0 for k, coef in enumerate(poly_c.coeffs) if k % 2):
        raise QuadZerosError(f"discriminant is not even in cos(theta): {poly_c}")
    return RationalPoly(tuple(poly_c.coeffs[0::2]))


def _discriminant_closed(p: NormParams) -> RationalPoly:
    a3, a2, a1, a0 = _fstar_in_c(p)
    return _even_part_in_x(cubic_discriminant(a3, a2, a1, a0))


def _discriminant_resultant(p: NormParams) -> RationalPoly:
    r, c = sympy.symbols('r c')
    a = sympy.Rational(p.a.numerator, p.a.denominator)
    b = sympy.Rational(p.b.numerator, p.b.denominator)
    f = -a * r ** 3 + (2 - 6 * a) * c * r ** 2 + (1 + b + (4 - 12 * a) * c ** 2) * r + 2 * c - 8 * a * c ** 3
    # disc = (-1)^(n(n-1)/2) Res(f, f') / lc(f) with n = 3
    disc = sympy.expand(sympy.cancel(-sympy.resultant(f, sympy.diff(f, r), r) / (-a)))
    coeffs = [Fraction(int(q.p), int(q.q)) for q in reversed(sympy.Poly(disc, c).all_coeffs())]
    return _even_part_in_x(RationalPoly(tuple(coeffs)))


def discriminant_x(p: NormParams) -> RationalPoly:
    """Discriminant in r of f*(r, theta) as a polynomial in x = cos^2(theta)

    Computed from the sympy resultant Res_r(f*, df*/dr) and from the closed cubic
    discriminant; the two must agree exactly.
    """
    if p.a == 0:
        raise PreconditionFailed("f* is not cubic when a = 0")
    via_resultant = _discriminant_resultant(p)
    via_formula = _discriminant_closed(p)
    if via_resultant != via_formula:
        raise QuadZerosError(f"discriminant mismatch: {via_resultant} != {via_formula}")
    return via_resultant


def double_root_zeta(p: NormParams, x: float) -> float:
    """Double root of f* at cos(theta) = sqrt(x)"""
    a, b = p.af, p.bf
    num = -math.sqrt(x) * (-3 * a * (b + 8 * x - 2) + b + 4 * x + 1)
    return num / (3 * a * (b - 4 * x + 1) + 4 * x)


def _double_root_configurations(p: NormParams, delta: RationalPoly) -> List[Tuple[float, float]]:
    """(x, zeta) for every zero x of delta in (0, 1], with the double root zeta of f* there"""
    out = []
    for interval in isolate(delta):
        x = refine(delta, interval, tol=1e-16)
        if not 0 < x <= 1:
            continue
        try:
            out.append((x, double_root_zeta(p, x)))
        except ZeroDivisionError:
            out.append((x, math.inf))
    return out


def witness_above(p: NormParams, steps: int = SCAN_STEPS) -> WitnessResult:
    """Witness for a > (b+9)/27, found just past the double-root configuration x' of f*

    For b = 0 the discriminant also vanishes at x = 1/4, where the double root
    -2cos(theta) sits on the unit circle; only zeros with |zeta'| < 1 are candidates.
    """
    if not 27 * p.a > p.b + 9:
        raise PreconditionFailed(f"witness_above needs a > (b+9)/27, got (a, b) = ({p.a}, {p.b})")
    delta = discriminant_x(p)
    configurations = _double_root_configurations(p, delta)
    inside = [(x, z) for x, z in configurations if abs(z) < 1 - UNIT_MARGIN]
    if not inside:
        raise WitnessSearchFailed(
            f"no discriminant zero in (0, 1] has |zeta'| < 1: {configurations}")
    if len(inside) != 1:
        raise UniqueRootViolation(f"discriminant has {len(inside)} zeros in (0, 1] with |zeta'| < 1")
    if len(configurations) > 1:
        logger.info(f"discriminant has {len(configurations)} zeros in (0, 1]; one has |zeta'| < 1")
    x_prime, zeta_prime = inside[0]
    logger.info(f"x' = {x_prime:.17g}, zeta' = {zeta_prime:.17g}")

    c0 = math.sqrt(x_prime)
    step0 = min(1e-2, (1 - c0) / 2)
    thetas = [math.acos(c0 + step0 * 0.5 ** k) for k in range(steps)]
    return _search(p, thetas, 'a_above', {
        'x_prime': x_prime,
        'zeta_prime': zeta_prime,
        'delta_at_0': str(delta(Fraction(0))),
        'delta_at_1': str(delta(Fraction(1))),
    })


def confirm_nonreal(p: NormParams, m_cap: Optional[int] = None) -> Optional[int]:
    """Smallest m <= m_cap for which H_m has a nonreal zero, by exact Sturm counts"""
    m_cap = load_settings().m_cap if m_cap is None else m_cap
    if reality_condition(p):
        logger.warning(f"(a, b) = ({p.a}, {p.b}) satisfies the reality condition; no nonreal zero is expected")
    seq = gen_H(p, m_cap)
    for m in range(1, m_cap + 1):
        # H_m vanishes identically at isolated parameters, e.g. H_2 at (1, 0)
        if seq[m].is_zero():
            continue
        if not verdict(seq[m], isolate_roots=False).all_real:
            logger.info(f"H_{m} has a nonreal zero at (a, b) = ({p.a}, {p.b})")
            return m
    logger.info(f"All zeros of H_1..H_{m_cap} are real at (a, b) = ({p.a}, {p.b})")
    return None


def witness(p: NormParams, confirm: bool = False, m_cap: Optional[int] = None) -> WitnessResult:
    """Pick the witness regime from the failing inequality"""
    if p.a < -p.b - 1:
        result = witness_below(p)
    elif 27 * p.a > p.b + 9:
        result = witness_above(p)
    else:
        raise PreconditionFailed(f"(a, b) = ({p.a}, {p.b}) satisfies the reality condition; there is no witness")
    if confirm:
        result.confirmed_m = confirm_nonreal(p, m_cap)
    return result


"""
Polynomial sequences of the four-term recurrence

    P_m + c P_{m-1} + (b0 + b1 z) P_{m-2} + (a0 + a1 z) P_{m-3} = 0

and its normalized form H_m + H_{m-1} + (a - b z) H_{m-2} + z H_{m-3} = 0,
both with the initial data P_0 = 1 and P_negative = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from loguru import logger

from quadzeros.config import load_settings
from quadzeros.errors import InvalidParams
from quadzeros.polycore import RationalPoly, as_fraction


@dataclass(frozen=True)
class GeneralParams:
    """Raw coefficients: C(z) = c, B(z) = b0 + b1 z, A(z) = a0 + a1 z"""

    c: Fraction
    b0: Fraction
    b1: Fraction
    a0: Fraction
    a1: Fraction

    def __post_init__(self):
        for name in ('c', 'b0', 'b1', 'a0', 'a1'):
            try:
                object.__setattr__(self, name, as_fraction(getattr(self, name)))
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise InvalidParams(f"{name}: {e}") from e
        if self.c * self.a1 == 0:
            raise InvalidParams("c*a1 must be nonzero")
        if self.c * self.a1 * self.b1 > 0:
            raise InvalidParams("c*a1*b1 > 0 is outside the supported family")

    def as_dict(self) -> dict:
        return {k: str(getattr(self, k)) for k in ('c', 'b0', 'b1', 'a0', 'a1')}


@dataclass(frozen=True)
class NormParams:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        for name in ('a', 'b'):
            try:
                object.__setattr__(self, name, as_fraction(getattr(self, name)))
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise InvalidParams(f"{name}: {e}") from e
        if self.b < 0:
            raise InvalidParams(f"b must be nonnegative, got {self.b}")

    @property
    def af(self) -> float:
        return float(self.a)

    @property
    def bf(self) -> float:
        return float(self.b)

    def as_dict(self) -> dict:
        return {'a': str(self.a), 'b': str(self.b)}


Params = Union[NormParams, GeneralParams]


@dataclass(frozen=True)
class PolySequence:
    params: Params
    polys: Tuple[RationalPoly, ...]

    def __getitem__(self, m: int) -> RationalPoly:
        return self.polys[m]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @property
    def m_max(self) -> int:
        return len(self.polys) - 1

    def degrees(self) -> List[int]:
        return [p.degree() for p in self.polys]


def _check_m_max(m_max: int, cap: Optional[int]) -> None:
    if m_max < 0:
        raise InvalidParams(f"m_max must be >= 0, got {m_max}")
    cap = load_settings().m_max_cap if cap is None else cap
    if m_max > cap:
        raise InvalidParams(f"m_max={m_max} exceeds the cap {cap}; raise it with --mmax-cap, cap= or QUADZEROS_MMAX_CAP")


def _run_recurrence(c1: RationalPoly, c2: RationalPoly, c3: RationalPoly, m_max: int) -> List[RationalPoly]:
    one = RationalPoly.constant(1)
    zero = RationalPoly.zero()
    polys: List[RationalPoly] = []
    for m in range(m_max + 1):
        if m == 0:
            polys.append(one)
            continue
        p1 = polys[m - 1]
        p2 = polys[m - 2] if m >= 2 else zero
        p3 = polys[m - 3] if m >= 3 else zero
        polys.append(-(c1 * p1) - c2 * p2 - c3 * p3)
    return polys


def gen_H(params: NormParams, m_max: int, cap: Optional[int] = None) -> PolySequence:
    """H_0 .. H_{m_max} with H_m = -H_{m-1} - (a - b z) H_{m-2} - z H_{m-3}"""
    _check_m_max(m_max, cap)
    polys = _run_recurrence(
        RationalPoly.constant(1),
        RationalPoly.linear(params.a, -params.b),
        RationalPoly.monomial(1),
        m_max,
    )
    logger.debug(f"Generated H_0..H_{m_max} for a={params.a}, b={params.b}")
    return PolySequence(params, tuple(polys))


def gen_P(params: GeneralParams, m_max: int, cap: Optional[int] = None) -> PolySequence:
    _check_m_max(m_max, cap)
    polys = _run_recurrence(
        RationalPoly.constant(params.c),
        RationalPoly.linear(params.b0, params.b1),
        RationalPoly.linear(params.a0, params.a1),
        m_max,
    )
    logger.debug(f"Generated P_0..P_{m_max} for {params.as_dict()}")
    return PolySequence(params, tuple(polys))


# power series in t with coefficients in Q[z]

Series = List[RationalPoly]


def _series_mul(f: Sequence[RationalPoly], g: Sequence[RationalPoly], n: int) -> Series:
    out = [RationalPoly.zero() for _ in range(n)]
    for i, fi in enumerate(f[:n]):
        if fi.is_zero():
            continue
        for j, gj in enumerate(g[:n - i]):
            out[i + j] = out[i + j] + fi * gj
    return out


def _series_inverse(d: Sequence[RationalPoly], n: int) -> Series:
    """Newton iteration g <- g (2 - d g), doubling the precision each pass; d[0] == 1"""
    g: Series = [RationalPoly.constant(1)]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        dg = _series_mul(d, g, prec)
        two_minus = [-x for x in dg]
        two_minus[0] = two_minus[0] + 2
        g = _series_mul(g, two_minus, prec)
    return g[:n]


def series_oracle(params: NormParams, m_max: int) -> PolySequence:
    """Coefficients of t^m in 1 / (1 + t + (a - b z) t^2 + z t^3), independent of gen_H"""
    if m_max < 0:
        raise InvalidParams(f"m_max must be >= 0, got {m_max}")
    denom = [
        RationalPoly.constant(1),
        RationalPoly.constant(1),
        RationalPoly.linear(params.a, -params.b),
        RationalPoly.monomial(1),
    ]
    return PolySequence(params, tuple(_series_inverse(denom, m_max + 1)))


def h_at_zero(params: NormParams, m_max: int) -> List[Fraction]:
    """H_m(0): the coefficients of 1 / (1 + t + a t^2)"""
    values: List[Fraction] = []
    for m in range(m_max + 1):
        if m == 0:
            values.append(Fraction(1))
            continue
        prev2 = values[m - 2] if m >= 2 else Fraction(0)
        values.append(-values[m - 1] - params.a * prev2)
    return values


def reduced_image(params: GeneralParams, m_max: int, cap: Optional[int] = None) -> PolySequence:
    """c^m H_m((a1 z + a0) / c^3) with (a, b) the normalized parameters of params"""
    from quadzeros.zerolocus import normalize

    norm = normalize(params)
    h = gen_H(norm, m_max, cap)
    inner = RationalPoly.linear(params.a0, params.a1) / params.c ** 3
    polys = tuple(hm.compose(inner).scale(params.c ** m) for m, hm in enumerate(h))
    return PolySequence(params, polys)

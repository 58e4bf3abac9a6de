"""
Density of the union of zeros of H_0 .. H_M inside the interval
The largest gap between consecutive zeros in [endpoint - window, endpoint]
shrinks as M grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Sequence

from loguru import logger

from quadzeros.errors import InvalidParams
from quadzeros.parallel import ordered_map
from quadzeros.realroots import real_roots
from quadzeros.recurrence import NormParams, gen_H
from quadzeros.thetaengine import HALF_PI, theta_for_z, theta_zeros, z_of_theta
from quadzeros.zerolocus import require_condition, zeta0

METHODS = ('theta', 'sturm')


def _theta_zeros_as_z(p: NormParams, grid: int, theta_min: float, m: int) -> List[float]:
    return [z_of_theta(p, t) for t in theta_zeros(p, m, grid, workers=1, theta_min=theta_min)]


def zero_union(
    p: NormParams,
    m_max: int,
    window: float,
    method: str = 'theta',
    grid: int = 4096,
    workers: Optional[int] = None,
    cap: Optional[int] = None,
) -> List[float]:
    """Sorted zeros of H_1 .. H_{m_max} lying in [endpoint - window, endpoint]"""
    if method not in METHODS:
        raise InvalidParams(f"method must be one of {METHODS}, got {method!r}")
    if window <= 0:
        raise InvalidParams(f"window must be positive, got {window}")
    require_condition(p)
    endpoint = zeta0(p).endpoint
    lo = endpoint - window

    logger.info(f"Collecting zeros of H_1..H_{m_max} in [{lo:.6g}, {endpoint:.6g}] ({method})")
    if method == 'theta':
        theta_min = theta_for_z(p, lo) if lo > -math.inf else HALF_PI
        per_m = ordered_map(partial(_theta_zeros_as_z, p, grid, theta_min), range(1, m_max + 1), workers)
    else:
        seq = gen_H(p, m_max, cap=cap)
        per_m = ordered_map(real_roots, list(seq.polys[1:]), workers)

    zeros = sorted(z for zs in per_m for z in zs if lo <= z <= endpoint)
    logger.success(f"{len(zeros)} zeros collected up to m = {m_max}")
    return zeros


def max_gap(zeros: Sequence[float]) -> float:
    """Largest difference between consecutive sorted values; inf with fewer than two"""
    values = sorted(zeros)
    if len(values) < 2:
        return math.inf
    return max(b - a for a, b in zip(values, values[1:]))


@dataclass
class DensityReport:
    m_max: int
    window: float
    endpoint: float
    max_gap: float
    zeros: List[float] = field(default_factory=list)

    def as_row(self) -> dict:
        return {
            'm_max': self.m_max,
            'window': self.window,
            'endpoint': self.endpoint,
            'zero_count': len(self.zeros),
            'max_gap': self.max_gap,
        }


def density_report(
    p: NormParams,
    m_max: int,
    window: float = 5.0,
    method: str = 'theta',
    grid: int = 4096,
    workers: Optional[int] = None,
    cap: Optional[int] = None,
) -> DensityReport:
    zeros = zero_union(p, m_max, window, method, grid, workers, cap)
    return DensityReport(m_max, window, zeta0(p).endpoint, max_gap(zeros), zeros)

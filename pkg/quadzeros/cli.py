#!/usr/bin/env python3
"""
Command-line front end for quadzeros
Subcommands gen, classify, interval, thetascan, witness and density write a
CSV or JSON table to --out (stdout by default).

Exit codes: 0 success, 2 invalid parameters, 3 I/O failure, 4 internal
invariant violation.
"""

import argparse
import math
import sys
from fractions import Fraction
from functools import partial
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer, field_validator

from quadzeros.asymptotics import confirm_nonreal, witness
from quadzeros.config import configure_logging, load_settings
from quadzeros.density import density_report
from quadzeros.emit import render, write_table
from quadzeros.errors import InvalidParams, QuadZerosError
from quadzeros.parallel import ordered_map
from quadzeros.polycore import as_fraction
from quadzeros.realroots import verdict
from quadzeros.recurrence import GeneralParams, NormParams, gen_H, gen_P
from quadzeros.thetaengine import HALF_PI, count_g_zeros, monotonicity_scan, sample
from quadzeros.zerolocus import interval_H, interval_P, normalize, reality_condition

GENERAL_FIELDS = ('c', 'b0', 'b1', 'a0', 'a1')
RATIONAL_FIELDS = ('a', 'b') + GENERAL_FIELDS + ('a_start', 'a_stop', 'a_step')

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


class RunConfig(BaseModel):
    """Validated options of a single command run"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: Literal['gen', 'classify', 'interval', 'thetascan', 'witness', 'density']
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None
    b0: Optional[Fraction] = None
    b1: Optional[Fraction] = None
    a0: Optional[Fraction] = None
    a1: Optional[Fraction] = None
    a_start: Optional[Fraction] = None
    a_stop: Optional[Fraction] = None
    a_step: Optional[Fraction] = None
    a_values: List[Fraction] = Field(default_factory=list)
    m: int = Field(10, ge=0)
    m_max: int = Field(10, ge=0)
    grid: int = Field(4096, ge=2)
    tol: float = Field(1e-10, gt=0)
    m_cap: int = Field(60, ge=1)
    m_max_cap: Optional[int] = Field(None, ge=1)
    window: float = Field(5.0, gt=0)
    method: Literal['theta', 'sturm'] = 'theta'
    confirm: bool = False
    workers: Optional[int] = Field(None, ge=1)
    format: Literal['csv', 'json'] = 'csv'
    out: Optional[str] = None

    @field_validator(*RATIONAL_FIELDS, mode='before')
    @classmethod
    def parse_rational(cls, value):
        if value is None:
            return None
        try:
            return as_fraction(value)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e

    @field_validator('a_values', mode='before')
    @classmethod
    def parse_rational_list(cls, value):
        if value is None:
            return []
        if isinstance(value, str):
            value = [v for v in value.split(',') if v.strip()]
        return [as_fraction(v) for v in value]

    @field_serializer(*RATIONAL_FIELDS)
    def serialize_rational(self, value: Optional[Fraction]):
        return None if value is None else str(value)

    @field_serializer('a_values')
    def serialize_rational_list(self, value: List[Fraction]):
        return [str(v) for v in value]

    def has_general(self) -> bool:
        return any(getattr(self, k) is not None for k in GENERAL_FIELDS)

    def general_params(self) -> GeneralParams:
        missing = [k for k in GENERAL_FIELDS if getattr(self, k) is None]
        if missing:
            raise InvalidParams(f"general parameters need --{' --'.join(missing)}")
        return GeneralParams(*(getattr(self, k) for k in GENERAL_FIELDS))

    def norm_params(self) -> NormParams:
        """(a, b) directly, or by normalizing the general parameters"""
        if self.has_general():
            return normalize(self.general_params())
        if self.a is None or self.b is None:
            raise InvalidParams("--a and --b (or --c --b0 --b1 --a0 --a1) are required")
        return NormParams(self.a, self.b)

    def a_grid(self) -> List[Fraction]:
        if self.a_values:
            return list(self.a_values)
        if self.a_start is None or self.a_stop is None:
            return []
        step = self.a_step if self.a_step is not None else Fraction(1)
        if step <= 0:
            raise InvalidParams(f"--astep must be positive, got {step}")
        values = []
        a = self.a_start
        while a <= self.a_stop:
            values.append(a)
            a += step
        return values


Table = Tuple[List[Dict[str, Any]], Dict[str, Any]]


def cmd_gen(config: RunConfig) -> Table:
    """Coefficient table of H_0..H_mmax, or P_0..P_mmax for general parameters"""
    if config.has_general():
        seq = gen_P(config.general_params(), config.m_max, cap=config.m_max_cap)
        family = 'P'
    else:
        seq = gen_H(config.norm_params(), config.m_max, cap=config.m_max_cap)
        family = 'H'
    rows = []
    for m, poly in enumerate(seq):
        coeffs = [str(c) for c in poly.coeffs] or ['0']
        rows.append({
            'm': m,
            'degree': poly.degree(),
            'coeffs': coeffs if config.format == 'json' else ", ".join(coeffs),
        })
    return rows, {'family': family, 'm_max': config.m_max}


def _classify_row(b: Fraction, m_max: int, m_cap: int, m_max_cap: Optional[int], a: Fraction) -> Dict[str, Any]:
    p = NormParams(a, b)
    holds = reality_condition(p)
    row = {
        'a': str(a),
        'b': str(b),
        'condition': holds,
        'counterexample_m': None,
        'all_real_verified': None,
    }
    if holds:
        seq = gen_H(p, m_max, cap=m_max_cap)
        row['all_real_verified'] = all(h.is_zero() or verdict(h, isolate_roots=False).all_real for h in seq)
    else:
        row['counterexample_m'] = confirm_nonreal(p, m_cap)
    return row


def cmd_classify(config: RunConfig) -> Table:
    if config.b is None:
        raise InvalidParams("classify needs --b")
    if config.b < 0:
        raise InvalidParams(f"b must be nonnegative, got {config.b}")
    grid = config.a_grid()
    logger.info(f"Classifying {len(grid)} values of a at b = {config.b}")
    row = partial(_classify_row, config.b, config.m_max, config.m_cap, config.m_max_cap)
    rows = ordered_map(row, grid, config.workers)
    return rows, {'b': str(config.b), 'count': len(rows)}


def cmd_interval(config: RunConfig) -> Table:
    if config.has_general():
        general = config.general_params()
        span = interval_P(general)
        p = normalize(general)
    else:
        p = config.norm_params()
        span = interval_H(p)
    row = {'a': str(p.a), 'b': str(p.b)}
    row.update(span.as_row())
    return [row], {'endpoint': repr(span.finite_endpoint), 'zeta0': repr(span.zeta0)}


def _sample_row(p: NormParams, tol: float, theta: float) -> Optional[Dict[str, Any]]:
    try:
        return sample(p, theta, tol).as_row()
    except QuadZerosError as e:
        logger.debug(f"theta={theta:.17g} skipped: {e}")
        return None


def cmd_thetascan(config: RunConfig) -> Table:
    p = config.norm_params()
    margin = 1e-6
    thetas = np.linspace(HALF_PI + margin, math.pi - margin, config.grid).tolist()
    samples = ordered_map(partial(_sample_row, p, config.tol), thetas, config.workers)
    rows = [r for r in samples if r is not None]

    min_diff = monotonicity_scan(p, config.grid, config.workers)
    reports = count_g_zeros(p, config.m, config.grid, config.workers)
    total = sum(r.zero_count for r in reports)
    summary = {
        'm': config.m,
        'samples': len(rows),
        'skipped': len(samples) - len(rows),
        'min_forward_difference': repr(min_diff),
        'increasing': min_diff > 0,
        'g_zero_total': total,
        'g_zero_counts': ";".join(f"{r.h}:{r.zero_count}" for r in reports),
    }
    return rows, summary


def cmd_witness(config: RunConfig) -> Table:
    p = config.norm_params()
    result = witness(p, confirm=config.confirm, m_cap=config.m_cap)
    return [result.as_row()], {'regime': result.regime}


def cmd_density(config: RunConfig) -> Table:
    p = config.norm_params()
    report = density_report(
        p, config.m_max, config.window, config.method, config.grid, config.workers, cap=config.m_max_cap)
    rows = [{'index': i, 'z': z} for i, z in enumerate(report.zeros)]
    summary = {k: repr(v) if isinstance(v, float) else v for k, v in report.as_row().items()}
    return rows, summary


HANDLERS = {
    'gen': cmd_gen,
    'classify': cmd_classify,
    'interval': cmd_interval,
    'thetascan': cmd_thetascan,
    'witness': cmd_witness,
    'density': cmd_density,
}


def build_parser() -> argparse.ArgumentParser:
    settings = load_settings()
    parser = argparse.ArgumentParser(prog='quadzeros', description=__doc__.strip().splitlines()[0])
    parser.add_argument('--log-level', default=None, help="loguru level (default QUADZEROS_LOG_LEVEL)")
    sub = parser.add_subparsers(dest='command', required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        for name in ('a', 'b') + GENERAL_FIELDS:
            sp.add_argument(f'--{name}', default=None, help="exact rational, e.g. -3, 1/3, 0.3")
        sp.add_argument('--format', choices=['csv', 'json'], default='csv')
        sp.add_argument('--out', default=None, help="output path (default stdout)")
        sp.add_argument('--tol', type=float, default=settings.tol)
        sp.add_argument('--grid', type=int, default=settings.grid)
        sp.add_argument('--mcap', dest='m_cap', type=int, default=settings.m_cap)
        sp.add_argument('--workers', type=int, default=None, help="worker processes (default QUADZEROS_THREADS)")

    def m_max_option(sp: argparse.ArgumentParser, default: int) -> None:
        sp.add_argument('--mmax', dest='m_max', type=int, default=default)
        sp.add_argument('--mmax-cap', dest='m_max_cap', type=int, default=None,
                        help=f"override the largest accepted --mmax (default {settings.m_max_cap})")

    sp = sub.add_parser('gen', help="coefficient table of the sequence")
    common(sp)
    m_max_option(sp, 10)

    sp = sub.add_parser('classify', help="reality condition sweep over a at fixed b")
    common(sp)
    sp.add_argument('--astart', dest='a_start', default=None)
    sp.add_argument('--astop', dest='a_stop', default=None)
    sp.add_argument('--astep', dest='a_step', default=None)
    sp.add_argument('--avals', dest='a_values', default=None, help="comma-separated a values")
    m_max_option(sp, 20)

    sp = sub.add_parser('interval', help="zeta0 and the zero-containing interval")
    common(sp)

    sp = sub.add_parser('thetascan', help="theta samples, monotonicity and g_m zero counts")
    common(sp)
    sp.add_argument('--m', type=int, default=10)

    sp = sub.add_parser('witness', help="nonreal limit point when the reality condition fails")
    common(sp)
    sp.add_argument('--confirm', action='store_true', help="also find the first H_m with a nonreal zero")

    sp = sub.add_parser('density', help="union of zeros below the endpoint and its largest gap")
    common(sp)
    m_max_option(sp, 40)
    sp.add_argument('--window', type=float, default=5.0)
    sp.add_argument('--method', choices=['theta', 'sturm'], default='theta')
    return parser


def run(config: RunConfig) -> str:
    rows, summary = HANDLERS[config.command](config)
    return render(config.command, rows, config.format, config.model_dump(), summary)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    options = {k: v for k, v in vars(args).items() if k != 'log_level' and v is not None}

    try:
        config = RunConfig(**options)
        text = run(config)
        write_table(config.out, text)
    except ValidationError as e:
        logger.error(f"Invalid options: {e}")
        return EXIT_INVALID
    except InvalidParams as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_INVALID
    except QuadZerosError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_IO

    logger.success(f"{config.command} completed")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

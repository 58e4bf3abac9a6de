"""
CSV / JSON emission of result tables

CSV files start with a `# quadzeros-v1 <command>` line, optional `# key=value`
summary lines, then a header row. Floats are written with 17 significant
digits; exact rationals are written as "p/q" strings.
"""

import io
import json
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from loguru import logger

SCHEMA = "quadzeros-v1"
FORMATS = ('csv', 'json')


def _plain(value: Any) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if hasattr(value, 'item') and callable(value.item):
        return value.item()
    return value


def render(
    command: str,
    rows: List[Dict[str, Any]],
    fmt: str = 'csv',
    config: Optional[Dict[str, Any]] = None,
    summary: Optional[Dict[str, Any]] = None,
    columns: Optional[Sequence[str]] = None,
) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    summary = summary or {}
    if fmt == 'json':
        payload = {
            'command': command,
            'config': _plain(config or {}),
            'rows': _plain(rows),
            'summary': _plain(summary),
        }
        return json.dumps(payload, indent=2, default=str) + "\n"

    buffer = io.StringIO()
    buffer.write(f"# {SCHEMA} {command}\n")
    for key, value in summary.items():
        buffer.write(f"# {key}={value}\n")
    frame = pd.DataFrame(rows, columns=list(columns) if columns else None)
    frame.to_csv(buffer, index=False, float_format="%.17g")
    return buffer.getvalue()


def write_table(out: Optional[str], text: str) -> None:
    """Write rendered output to a path, or stdout when out is None or '-'"""
    if out in (None, '-'):
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f"Results written to {out}")


def parse_csv(text: str, dtype=None) -> Tuple[str, Dict[str, str], pd.DataFrame]:
    """(command, summary, rows) from text produced by render(fmt='csv')"""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"# {SCHEMA} "):
        raise ValueError("missing quadzeros-v1 header line")
    command = lines[0].split(maxsplit=2)[2]
    summary = {}
    body_start = 1
    for line in lines[1:]:
        if not line.startswith('#'):
            break
        key, _, value = line[1:].strip().partition('=')
        summary[key] = value
        body_start += 1
    body = "\n".join(lines[body_start:])
    if not body.strip():
        return command, summary, pd.DataFrame()
    frame = pd.read_csv(io.StringIO(body), dtype=dtype, float_precision='round_trip')
    return command, summary, frame


def read_table(path: str, dtype=None) -> Tuple[str, Dict[str, str], pd.DataFrame]:
    with open(path, encoding='utf-8') as f:
        return parse_csv(f.read(), dtype=dtype)

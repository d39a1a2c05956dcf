"""
Swapurify Data Formatter

Deterministic CSV and JSON rendering of scans, curves and protocol runs.
Numbers use 12 significant digits, '.' decimals and '\\n' line endings so
identical inputs give byte-identical files.
"""

import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from protocol import Curve, ProtocolConfig, RegionGrid, RoundResult

SIGNIFICANT_DIGITS = 12

SCAN_COLUMNS = ('C_initial', 'C_final', 'enhanced', 'branch_probability')
RUN_COLUMNS = ('round', 'branch', 'concurrence', 'branch_probability',
               'cumulative_probability', 'weak_probability', 'expected_pairs_consumed')


def format_number(value: float) -> str:
    """
    Format a number with 12 significant digits.

    Args:
        value: Number to format

    Returns:
        Text such as '0.863013698630', 'nan' or 'inf'
    """
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, int):
        return str(value)
    return format(float(value), f'.{SIGNIFICANT_DIGITS}g')


def round_number(value: float) -> float:
    """Round a float to 12 significant digits (JSON output)."""
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(format_number(value))


def _rounded(obj: Any) -> Any:
    """Recursively round every float in a JSON-able structure."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round_number(obj)
    if isinstance(obj, dict):
        return {str(k): _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return round_number(obj)


def format_csv(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Render rows as CSV text.

    Args:
        headers: Column names
        rows: Row values (numbers formatted with format_number)

    Returns:
        CSV text ending in '\\n'
    """
    lines = [','.join(headers)]
    for row in rows:
        lines.append(','.join(v if isinstance(v, str) else format_number(v) for v in row))
    return '\n'.join(lines) + '\n'


def format_json(obj: Any) -> str:
    """Render a structure as sorted, indented JSON ending in '\\n'."""
    return json.dumps(_rounded(obj), sort_keys=True, indent=2) + '\n'


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def scan_to_csv(grid: RegionGrid) -> str:
    """Columns: axis1, axis2, C_initial, C_final, enhanced (0/1), branch_probability."""
    headers = (grid.axis1.name, grid.axis2.name) + SCAN_COLUMNS
    rows = (
        (v1, v2, pt.c_initial, pt.c_final, pt.enhanced, pt.branch_probability)
        for v1, v2, pt in grid.rows()
    )
    return format_csv(headers, rows)


def scan_to_json(grid: RegionGrid, base: Optional[ProtocolConfig] = None) -> str:
    """Scan as JSON with axes, fixed parameters and axis1-major points."""
    points = [
        {
            grid.axis1.name: v1,
            grid.axis2.name: v2,
            'C_initial': pt.c_initial,
            'C_final': pt.c_final,
            'enhanced': pt.enhanced,
            'branch_probability': pt.branch_probability,
        }
        for v1, v2, pt in grid.rows()
    ]
    axes = [
        {'name': axis.name, 'lo': axis.lo, 'hi': axis.hi, 'steps': axis.steps}
        for axis in (grid.axis1, grid.axis2)
    ]
    payload = {'axes': axes, 'points': points}
    if base is not None:
        payload['config'] = base.to_dict()
    return format_json(payload)


# ---------------------------------------------------------------------------
# Curves and runs
# ---------------------------------------------------------------------------

def curve_to_csv(curve: Curve) -> str:
    return format_csv(curve.columns, curve.rows)


def curve_to_json(curve: Curve) -> str:
    return format_json({'columns': list(curve.columns), 'rows': [list(row) for row in curve.rows]})


def run_to_csv(results: Sequence[RoundResult]) -> str:
    rows = (
        (r.round_index, r.branch_label, r.concurrence, r.branch_probability,
         r.cumulative_probability, r.weak_probability, r.expected_pairs_consumed)
        for r in results
    )
    return format_csv(RUN_COLUMNS, rows)


def run_to_json(cfg: ProtocolConfig, results: Sequence[RoundResult]) -> str:
    """Per-round records with flattened [re, im] state entries."""
    return format_json({'config': cfg.to_dict(), 'rounds': [r.to_dict() for r in results]})


def write_output(text: str, out: Optional[str]) -> None:
    """
    Write text to a file, or to stdout when out is None or '-'.

    Raises:
        OSError: If the file cannot be written
    """
    if out is None or out == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(out).write_text(text, encoding='utf-8', newline='\n')

"""Flat rendering of intervals, coverage rows and diagnostics as table, CSV or JSON."""
from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from typing import Any, Iterable, Sequence

from .harness import CoverageRecord, CoverageReport, DiagnosticRecord
from .interval import Interval

SIG_DIGITS = 10

INTERVAL_COLUMNS = (
    "method", "target", "kind", "lower", "upper", "level", "width",
    "coverage", "coverage_se", "replicates", "degenerate_count", "seed",
)
# Appended after the fixed columns, never reordered.
EXTRA_COLUMNS = ("mode", "N", "n", "mean_width", "degenerate", "small_sample", "fpc_factor")
COLUMNS = INTERVAL_COLUMNS + EXTRA_COLUMNS

DIAGNOSTIC_COLUMNS = ("scale", "ks_stat", "mean", "variance", "excluded", "replicates", "p", "N", "n", "seed")


def fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, f".{SIG_DIGITS}g")
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        return None if math.isnan(value) else float(format(value, f".{SIG_DIGITS}g"))
    return value


def interval_row(iv: Interval, N: int | None = None, n: int | None = None,
                 fpc_factor: float | None = None) -> dict[str, Any]:
    return {
        "method": iv.method, "target": iv.target, "kind": iv.kind,
        "lower": iv.lower, "upper": iv.upper, "level": iv.level, "width": iv.width,
        "N": N, "n": n, "degenerate": iv.degenerate, "small_sample": iv.small_sample,
        "fpc_factor": fpc_factor,
    }


def coverage_rows(report: CoverageReport) -> list[dict[str, Any]]:
    cfg = report.config
    return [_coverage_row(rec, report.mode, cfg.N, cfg.n, cfg.seed) for rec in report.records]


def _coverage_row(rec: CoverageRecord, mode: str, N: int, n: int, seed: int) -> dict[str, Any]:
    return {
        "method": rec.method, "target": rec.target, "kind": rec.kind, "level": rec.nominal_level,
        "width": rec.mean_width, "coverage": rec.coverage, "coverage_se": rec.coverage_se,
        "replicates": rec.replicates_used, "degenerate_count": rec.degenerate_count, "seed": seed,
        "mode": mode, "N": N, "n": n, "mean_width": rec.mean_width,
    }


def diagnostic_row(rec: DiagnosticRecord, p: float, N: int, n: int, seed: int) -> dict[str, Any]:
    return {
        "scale": rec.scale, "ks_stat": rec.ks_stat, "mean": rec.mean, "variance": rec.variance,
        "excluded": rec.excluded, "replicates": rec.replicates, "p": p, "N": N, "n": n, "seed": seed,
    }


def render(rows: Sequence[dict[str, Any]], columns: Sequence[str], fmt_name: str) -> str:
    if fmt_name == "csv":
        return _render_csv(rows, columns)
    if fmt_name == "json":
        return _render_json(rows, columns)
    return _render_table(rows, columns)


def _render_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def _render_json(rows, columns) -> str:
    out = [{c: _json_value(row[c]) for c in columns if row.get(c) is not None} for row in rows]
    return json.dumps(out, indent=2) + "\n"


def _render_table(rows, columns) -> str:
    used = [c for c in columns if any(row.get(c) is not None for row in rows)]
    cells = [[fmt(row.get(c)) for c in used] for row in rows]
    widths = [max([len(c)] + [len(r[j]) for r in cells]) for j, c in enumerate(used)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(used, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells)
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def parse_json(text: str) -> list[dict[str, Any]]:
    return json.loads(text)


def same_at_precision(a: float, b: float, digits: int = SIG_DIGITS) -> bool:
    """True when ``a`` and ``b`` agree once both are rounded to ``digits`` significant digits."""
    return format(float(a), f".{digits}g") == format(float(b), f".{digits}g")


def numeric_fields(row: dict[str, Any]) -> Iterable[str]:
    return (k for k, v in row.items() if isinstance(v, (int, float)) and not isinstance(v, bool))

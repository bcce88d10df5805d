"""Flat report rows and their CSV/JSON serialization.

One wide schema covers every command: interval rows, coverage rows,
feasibility tables, and width curves, with null for inapplicable fields.
CSV uses comma separators, LF line endings, UTF-8, a header row, and
``repr`` float formatting, which round-trips all 17 significant digits.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from .errors import DataError, InvariantError

__all__ = ["ReportRow", "write_report", "read_report", "write_summary", "row_as_dict"]


@dataclass(frozen=True)
class ReportRow:
    method: Optional[str] = None
    n: Optional[int] = None
    alpha: Optional[float] = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    is_whole_line: Optional[bool] = None
    width: Optional[float] = None
    coverage: Optional[float] = None
    mc_se: Optional[float] = None
    whole_line_fraction: Optional[float] = None
    mean_alpha_min: Optional[float] = None
    median_alpha_min: Optional[float] = None
    alpha_min: Optional[float] = None
    a_lower: Optional[float] = None
    a_upper: Optional[float] = None
    n_zero: Optional[int] = None
    ratio: Optional[float] = None
    replications: Optional[int] = None

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float) and not math.isfinite(value):
                raise InvariantError(f"report field {f.name} must be finite, got {value!r}")
        if self.is_whole_line and (self.lower is not None or self.upper is not None):
            raise InvariantError("whole-line rows cannot carry endpoints")


_FIELDS = [f.name for f in fields(ReportRow)]
_INT_FIELDS = {"n", "n_zero", "replications"}
_BOOL_FIELDS = {"is_whole_line"}
_STR_FIELDS = {"method"}


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in _STR_FIELDS:
        return text
    if name in _BOOL_FIELDS:
        if text not in ("true", "false"):
            raise DataError(f"invalid boolean {text!r} in column {name}")
        return text == "true"
    if name in _INT_FIELDS:
        return int(text)
    return float(text)


def write_report(path: str | Path, rows: list[ReportRow] | tuple[ReportRow, ...]) -> None:
    """Write rows as CSV: header, comma separator, LF endings, '.' decimals."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_FIELDS)
        for row in rows:
            writer.writerow([_format_cell(getattr(row, name)) for name in _FIELDS])


def read_report(path: str | Path) -> tuple[ReportRow, ...]:
    """Read back a report CSV; inverse of :func:`write_report`."""
    rows: list[ReportRow] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration as exc:
            raise DataError(f"{path}: empty report file") from exc
        if header != _FIELDS:
            raise DataError(f"{path}: unexpected report header {header!r}")
        for lineno, record in enumerate(reader, start=2):
            if len(record) != len(_FIELDS):
                raise DataError(f"{path}:{lineno}: expected {len(_FIELDS)} cells")
            try:
                values = {
                    name: _parse_cell(name, cell) for name, cell in zip(_FIELDS, record)
                }
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
            rows.append(ReportRow(**values))
    return tuple(rows)


def write_summary(path: str | Path, payload: dict) -> None:
    """Write the JSON summary document."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def row_as_dict(row: ReportRow) -> dict:
    """Row as a JSON-ready dict with nulls preserved."""
    return {name: getattr(row, name) for name in _FIELDS}

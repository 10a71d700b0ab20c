"""
Table writers shared by the CLI commands.

This module provides:
- OutputRecord assembly: flat rows plus a header carrying the tool
  version, a timestamp and the full input echo
- CSV rendering (12 significant digits, LF line endings) via pandas
- JSON rendering with values identical to the CSV
- Two-column plot data files
"""

from __future__ import annotations

import json
import math
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from .util import significant

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

FLOAT_FORMAT = "%.12g"
SIGNIFICANT_DIGITS = 12

BOUNDS_COLUMNS = ["N", "m", "potential", "q", "c", "lower", "lower_status", "upper", "ratio", "error"]
# JSON rows also carry the provenance notes
BOUNDS_JSON_COLUMNS = BOUNDS_COLUMNS + ["notes"]


def _normalize(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return significant(value, SIGNIFICANT_DIGITS)
    return value


@dataclass
class OutputRecord:
    """
    Rows of one command run, with provenance.

    Attributes:
        command: CLI command that produced the rows
        inputs: Echo of every input flag
        rows: Flat key-value rows
        columns: Column order for CSV output
        json_columns: Column order for JSON output (default: columns)
    """
    command: str
    inputs: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: Optional[List[str]] = None
    json_columns: Optional[List[str]] = None
    version: str = ""
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def normalized_rows(self, columns: Optional[List[str]] = None) -> List[Dict[str, Any]]:
        columns = columns or self.columns or (list(self.rows[0]) if self.rows else [])
        return [{key: _normalize(row.get(key)) for key in columns} for row in self.rows]

    def frame(self) -> pd.DataFrame:
        columns = self.columns or (list(self.rows[0]) if self.rows else [])
        return pd.DataFrame(self.normalized_rows(), columns=columns)

    def meta(self) -> Dict[str, Any]:
        return {
            "tool": "urbounds",
            "version": self.version,
            "command": self.command,
            "generated": self.timestamp,
            "inputs": self.inputs,
        }

    def header_lines(self) -> List[str]:
        lines = [
            f"# urbounds {self.version} {self.command}",
            f"# generated {self.timestamp}",
        ]
        lines.extend(f"# {key}={value}" for key, value in self.inputs.items())
        return lines


def render_csv(record: OutputRecord) -> str:
    """Header comment lines followed by the table."""
    body = record.frame().to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return "\n".join(record.header_lines()) + "\n" + body


def render_json(record: OutputRecord) -> str:
    payload = {"meta": record.meta(), "rows": record.normalized_rows(record.json_columns)}
    return json.dumps(payload, indent=2, default=str) + "\n"


def render(record: OutputRecord, fmt: str) -> str:
    if fmt == "json":
        return render_json(record)
    if fmt == "csv":
        return render_csv(record)
    raise ValueError(f"unsupported output format: {fmt}")


def write_text(path: str, text: str) -> Path:
    """Write UTF-8 text with LF line endings."""
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.info("output_written", extra={"path": str(target), "bytes": len(text)})
    return target


def write_plot_files(prefix: str, rows: Sequence[Dict[str, Any]]) -> List[Path]:
    """
    Write ``PREFIX_lower.dat`` and ``PREFIX_upper.dat``: N and the bound,
    space separated, rows without a value skipped.
    """
    frame = pd.DataFrame([{key: _normalize(row.get(key)) for key in ("N", "lower", "upper")} for row in rows])
    paths = []
    for column in ("lower", "upper"):
        data = frame[["N", column]].dropna() if not frame.empty else frame
        text = data.to_csv(sep=" ", header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        paths.append(write_text(f"{prefix}_{column}.dat", text))
    return paths

"""Deterministic CSV/JSON writers and the reference-table reader.

Floats are always written with 17 significant digits in scientific notation
(``format(x, ".16e")``), independent of locale. Undefined values are written
as an empty CSV field and as JSON ``null``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, List, Mapping, Sequence

import numpy as np

from .box_model import ReferenceRow, ReferenceTable

__all__ = [
    "SCHEMA_VERSION",
    "REFERENCE_HEADER",
    "ReferenceCsvError",
    "format_float",
    "dumps_json",
    "dumps_csv",
    "envelope",
    "parse_reference_csv",
    "dumps_wavefunction",
]

SCHEMA_VERSION = "1"
REFERENCE_HEADER = ("width", "level", "energy_ref", "source")


class ReferenceCsvError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_float(x: float) -> str:
    return format(float(x), ".16e")


def _scalar(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return None if not math.isfinite(value) else float(value)
    return value


def _json(obj, indent, level):
    obj = _scalar(obj)
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj: Any, indent: int = 2) -> str:
    """JSON text with fixed float formatting and stable key order (insertion order)."""
    return _json(obj, indent, 0) + "\n"


def _csv_field(value):
    value = _scalar(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def dumps_csv(columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_field(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def envelope(command: str, parameters: Mapping, unit_system: str, units: Mapping[str, str],
             payload_key: str, payload: Any, warnings: List[str]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": dict(parameters),
        "unit_system": unit_system,
        "units": dict(units),
        payload_key: payload,
        "warnings": list(warnings),
    }


def _positive(text, name, line):
    try:
        value = float(text)
    except ValueError:
        raise ReferenceCsvError(line, f"{name} is not a number: {text!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise ReferenceCsvError(line, f"{name} must be positive, got {text!r}")
    return value


def parse_reference_csv(text: str) -> ReferenceTable:
    """Parse ``width,level,energy_ref,source`` rows.

    Raises :class:`ReferenceCsvError` (carrying the 1-based line number) on a
    wrong header, malformed or non-positive numbers, and duplicate
    ``(width, level)`` pairs.
    """
    reader = csv.reader(io.StringIO(text))
    rows = []
    sources = []
    seen = {}
    header_seen = False
    for fields in reader:
        line = reader.line_num
        if not header_seen:
            if tuple(f.strip() for f in fields) != REFERENCE_HEADER:
                raise ReferenceCsvError(line, f"header must be {','.join(REFERENCE_HEADER)}")
            header_seen = True
            continue
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != 4:
            raise ReferenceCsvError(line, f"expected 4 fields, got {len(fields)}")
        width = _positive(fields[0], "width", line)
        try:
            level = int(fields[1])
        except ValueError:
            raise ReferenceCsvError(line, f"level is not an integer: {fields[1]!r}") from None
        if level < 1:
            raise ReferenceCsvError(line, f"level must be >= 1, got {level}")
        energy = _positive(fields[2], "energy_ref", line)
        if (width, level) in seen:
            raise ReferenceCsvError(line, f"duplicate (width, level) pair, first on line {seen[width, level]}")
        seen[width, level] = line
        rows.append(ReferenceRow(width, level, energy))
        sources.append(fields[3])
    if not header_seen:
        raise ReferenceCsvError(1, "empty file")
    provenance = "; ".join(sorted(set(s for s in sources if s)))
    return ReferenceTable(rows, provenance)


def dumps_wavefunction(r: np.ndarray, u: np.ndarray) -> str:
    lines = ["r,u"]
    lines.extend(f"{format_float(a)},{format_float(b)}" for a, b in zip(r, u))
    return "\n".join(lines) + "\n"

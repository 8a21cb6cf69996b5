"""Machine-readable output helpers.

All floating-point numbers are serialized with 17 significant digits so
that identical runs produce byte-identical output and golden-file
comparisons are meaningful.
"""

from __future__ import annotations

import csv
import io
import json
import math


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj, indent: int = 2) -> str:
    """json.dumps with every float rendered via format_float."""
    placeholders: dict[str, str] = {}

    def walk(o):
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return o
        if isinstance(o, float):
            key = f"\x00float:{len(placeholders)}\x00"
            placeholders[key] = format_float(o)
            return key
        if isinstance(o, dict):
            return {str(k): walk(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [walk(v) for v in o]
        if hasattr(o, "item"):  # numpy scalar
            return walk(o.item())
        if hasattr(o, "tolist"):  # numpy array
            return walk(o.tolist())
        return o

    text = json.dumps(walk(obj), indent=indent)
    for key, rendered in placeholders.items():
        text = text.replace(json.dumps(key), rendered)
    return text


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format_float(v)
    if hasattr(v, "item"):
        return _cell(v.item())
    return str(v)


def rows_to_csv(rows: list[dict], fieldnames: list[str] | None = None) -> str:
    """Render dict rows as CSV text with 17-significant-digit floats."""
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for row in rows:
        writer.writerow([_cell(row.get(name, "")) for name in fieldnames])
    return buf.getvalue()


def flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    """Flatten nested dicts/lists to dotted-key (key, value) pairs."""
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.extend(flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out.extend(flatten(v, f"{prefix}{i}."))
    else:
        out.append((prefix[:-1], obj))
    return out

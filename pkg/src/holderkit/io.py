"""Plain-text formats: header-free CSV inputs and 17-digit JSON/CSV output."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import InputError

__all__ = [
    "read_rows", "read_matrix_csv", "read_points_csv", "read_values_csv",
    "read_measure_csv", "read_subset", "read_spec_json", "write_csv",
    "format_number", "dumps_json",
]


def read_rows(path) -> list[tuple[int, list[float]]]:
    """Parse numeric CSV rows, returning ``(line_number, values)`` pairs.

    Blank lines are skipped; anything non-numeric raises :class:`InputError`
    naming the file and line.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read file ({exc})", path)
    rows = []
    for lineno, fields in enumerate(csv.reader(text.splitlines()), start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        try:
            vals = [float(f) for f in fields]
        except ValueError:
            raise InputError(f"non-numeric entry in {fields!r}", path, lineno)
        if not all(math.isfinite(v) for v in vals):
            raise InputError("non-finite entry", path, lineno)
        rows.append((lineno, vals))
    if not rows:
        raise InputError("file contains no data rows", path)
    return rows


def _uniform_width(rows, path, width=None):
    width = len(rows[0][1]) if width is None else width
    for lineno, vals in rows:
        if len(vals) != width:
            raise InputError(f"expected {width} columns, found {len(vals)}", path, lineno)
    return width


def read_matrix_csv(path) -> np.ndarray:
    rows = read_rows(path)
    _uniform_width(rows, path, len(rows))
    return np.array([v for _, v in rows])


def read_points_csv(path) -> np.ndarray:
    rows = read_rows(path)
    _uniform_width(rows, path)
    return np.array([v for _, v in rows])


def read_values_csv(path) -> np.ndarray:
    """One real per row, or two columns ``re, im`` for complex values."""
    rows = read_rows(path)
    width = _uniform_width(rows, path)
    if width == 1:
        return np.array([v[0] for _, v in rows])
    if width == 2:
        return np.array([complex(*v) for _, v in rows])
    raise InputError(f"values need 1 or 2 columns, found {width}", path, rows[0][0])


def read_measure_csv(path) -> np.ndarray:
    rows = read_rows(path)
    _uniform_width(rows, path, 1)
    for lineno, (m,) in rows:
        if m <= 0:
            raise InputError("masses must be positive", path, lineno)
    return np.array([v[0] for _, v in rows])


def read_subset(path) -> list[int]:
    rows = read_rows(path)
    _uniform_width(rows, path, 1)
    out = []
    for lineno, (v,) in rows:
        if v != int(v) or v < 0:
            raise InputError("subset entries must be nonnegative integers", path, lineno)
        out.append(int(v))
    return out


def read_spec_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read file ({exc})", path)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON ({exc.msg})", path, exc.lineno)


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def write_csv(path, columns) -> None:
    """Write equal-length numeric columns, 17 significant digits each."""
    cols = [np.asarray(c) for c in columns]
    with open(path, "w", newline="") as fh:
        for row in zip(*cols):
            fh.write(",".join(format_number(v) for v in row) + "\n")


def _encode(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_, int, float, np.integer, np.floating)):
        out.append(format_number(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, complex):
        _encode([obj.real, obj.imag], indent, level, out)
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, val) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(key)) + ": ")
            _encode(val, indent, level + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj.tolist() if isinstance(obj, np.ndarray) else obj)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for k, val in enumerate(items):
            out.append(pad)
            _encode(val, indent, level + 1, out)
            out.append(",\n" if k < len(items) - 1 else "\n")
        out.append(end + "]")
    else:
        out.append(json.dumps(str(obj)))


def dumps_json(obj, indent=2) -> str:
    """Like :func:`json.dumps` but every float carries 17 significant digits.

    Dict order is preserved; non-finite floats become ``null``.
    """
    out: list[str] = []
    _encode(obj, indent, 0, out)
    return "".join(out) + "\n"

"""CSV ingestion and deterministic JSON output."""

from __future__ import annotations

import csv
import json
import math

import numpy as np


class DataFormatError(ValueError):
    """The input file is not a numeric CSV table."""


def _is_number(token):
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_csv(path):
    """Read one point per row; a first row with a non-numeric cell is a header."""
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    if not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    if not rows:
        raise DataFormatError(f"{path}: header only, no data rows")
    width = len(rows[0])
    points = []
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DataFormatError(f"{path}: row {lineno} has {len(row)} columns, expected {width}")
        try:
            points.append([float(c) for c in row])
        except ValueError as exc:
            raise DataFormatError(f"{path}: row {lineno}: {exc}") from None
    return np.asarray(points, dtype=np.float64)


def write_csv(path, points):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.asarray(points):
            writer.writerow([format(float(v), ".17g") for v in row])


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return "null"
        text = format(value, ".17g")
        if text.lstrip("-").isdigit():
            text += ".0"
        return text
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def dumps(obj, indent=2):
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"

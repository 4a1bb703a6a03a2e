"""CSV ingestion and JSON-lines records."""

import csv
import json
import math

import numpy as np

from .functional import CurveSample, rescale_grid

__all__ = [
    "CSVFormatError",
    "read_matrix_csv",
    "read_curve_csv",
    "read_labeled_curves_csv",
    "write_curve_csv",
    "dumps_record",
    "write_jsonl",
    "read_jsonl",
]


class CSVFormatError(ValueError):
    """Malformed CSV input; the message names the offending row and column."""


def _rows(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise CSVFormatError(f"{path}: empty file")
    return rows


def _parse(cell, row, col, path):
    try:
        v = float(cell)
    except ValueError:
        raise CSVFormatError(
            f"{path}: row {row}, column {col}: not a number: {cell!r}") from None
    if not math.isfinite(v):
        raise CSVFormatError(f"{path}: row {row}, column {col}: non-finite value")
    return v


def _matrix(rows, path, first_row=1, skip_cols=0):
    width = None
    out = []
    for i, r in enumerate(rows, start=first_row):
        cells = r[skip_cols:]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise CSVFormatError(
                f"{path}: row {i}: expected {width} columns, found {len(cells)}")
        out.append([_parse(c, i, j + 1 + skip_cols, path)
                    for j, c in enumerate(cells)])
    return np.array(out, dtype=float)


def read_matrix_csv(path):
    """Read a headerless numeric CSV as an ``(n, p)`` float array.

    Raises
    ------
    CSVFormatError
        On an empty file, ragged rows or non-numeric cells.
    """
    return _matrix(_rows(path), path)


def read_curve_csv(path, label=None, rescale=True):
    """Read one group of curves.

    The first row holds the observation times, each further row one
    curve. Times are rescaled to [0, 1] unless ``rescale`` is false.
    """
    rows = _rows(path)
    if len(rows) < 2:
        raise CSVFormatError(f"{path}: need a grid row and at least one curve")
    grid = _matrix(rows[:1], path)[0]
    values = _matrix(rows[1:], path, first_row=2)
    if values.shape[1] != grid.size:
        raise CSVFormatError(
            f"{path}: grid has {grid.size} points but curves have {values.shape[1]}")
    try:
        g = rescale_grid(grid) if rescale else grid
        return CurveSample(g, values, label)
    except ValueError as e:
        raise CSVFormatError(f"{path}: {e}") from None


def read_labeled_curves_csv(path, rescale=True):
    """Read curves of several groups from one file with a labels column.

    The first cell of the grid row is a header (any text) and the first
    cell of every curve row is its group label.

    Returns
    -------
    dict
        ``{label: CurveSample}`` in order of first appearance.
    """
    rows = _rows(path)
    if len(rows) < 2:
        raise CSVFormatError(f"{path}: need a grid row and at least one curve")
    grid = _matrix(rows[:1], path, skip_cols=1)[0]
    values = _matrix(rows[1:], path, first_row=2, skip_cols=1)
    labels = [r[0].strip() for r in rows[1:]]
    g = rescale_grid(grid) if rescale else grid
    groups = {}
    for lab in dict.fromkeys(labels):
        idx = [i for i, l in enumerate(labels) if l == lab]
        groups[lab] = CurveSample(g, values[idx], lab)
    return groups


def write_curve_csv(path, times, values):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([repr(float(t)) for t in times])
        for row in np.atleast_2d(values):
            w.writerow([repr(float(v)) for v in row])


def _plain(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps_record(record):
    """One JSON line with sorted keys, so equal records give equal bytes."""
    return json.dumps(record, sort_keys=True, default=_plain, allow_nan=False)


def write_jsonl(records, fh):
    for r in records:
        fh.write(dumps_record(r) + "\n")


def read_jsonl(lines):
    """Parse JSON-lines from an iterable of strings (or an open file)."""
    return [json.loads(line) for line in lines if line.strip()]

"""CSV reading for the command line tools.

Comma separated, UTF-8, ``.`` decimal point. A single header row is detected
when the first row contains a cell that is neither numeric nor a missing
marker. Empty cells and ``NA`` are missing and come back as NaN.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

MISSING = ("", "na", "nan")


class InputError(ValueError):
    """Malformed or unusable input file."""


def _is_missing(cell: str) -> bool:
    return cell.strip().lower() in MISSING


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


@dataclass
class Table:
    names: list
    data: np.ndarray  # shape (rows, columns), NaN where missing

    def column_index(self, key) -> int:
        key = str(key)
        if key in self.names:
            return self.names.index(key)
        try:
            idx = int(key)
        except ValueError:
            raise InputError(f"no column named {key!r}; have {self.names}") from None
        if not 0 <= idx < len(self.names):
            raise InputError(f"column index {idx} out of range (0..{len(self.names) - 1})")
        return idx

    def column(self, key) -> np.ndarray:
        return self.data[:, self.column_index(key)]


def read_table(path) -> Table:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not valid UTF-8: {exc}") from None
    if not rows:
        raise InputError(f"{path} is empty")

    first = rows[0]
    has_header = any(not _is_missing(c) and not _is_number(c) for c in first)
    if has_header:
        names = [c.strip() for c in first]
        body = rows[1:]
        offset = 2
    else:
        names = [str(i) for i in range(len(first))]
        body = rows
        offset = 1

    width = len(names)
    data = np.empty((len(body), width), dtype=np.float64)
    for r, row in enumerate(body):
        if len(row) != width:
            raise InputError(f"row {r + offset}: expected {width} fields, got {len(row)}")
        for c, cell in enumerate(row):
            if _is_missing(cell):
                data[r, c] = np.nan
                continue
            try:
                data[r, c] = float(cell)
            except ValueError:
                raise InputError(f"row {r + offset}, column {names[c]!r}: non-numeric value {cell.strip()!r}") from None
            if not np.isfinite(data[r, c]):
                raise InputError(f"row {r + offset}, column {names[c]!r}: non-finite value {cell.strip()!r}")
    return Table(names, data)


def write_xy(path, xs, ys) -> None:
    """Write ``x,y`` rows with round-trip (repr) precision."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y"])
            w.writerows((repr(float(a)), repr(float(b))) for a, b in zip(xs, ys))
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None

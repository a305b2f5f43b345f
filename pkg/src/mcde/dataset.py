"""Numerical datasets: validation, CSV input/output, column projection.

Values are held column-major (Fortran order) because every downstream pass
walks single columns.  Datasets are immutable after construction; the
backing array is marked read-only so they can be shared across threads.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np


class DataError(Exception):
    """Base class for problems with input data."""


class ParseError(DataError):
    """A cell could not be parsed as a number."""


class ValidationError(DataError):
    """A parsed value violates dataset invariants (NaN or infinity)."""


class StructureError(DataError):
    """The file shape is wrong: empty input or ragged rows."""


class Dataset:
    """An n x d matrix of finite real numbers with named columns."""

    __slots__ = ("values", "column_names")

    def __init__(self, values, column_names: Sequence[str] | None = None):
        arr = np.asfortranarray(values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
        n, d = arr.shape
        if n < 1 or d < 1:
            raise ValueError(f"dataset must have n >= 1 and d >= 1, got {n}x{d}")
        if not np.all(np.isfinite(arr)):
            bad = np.argwhere(~np.isfinite(arr))[0]
            raise ValidationError(
                f"non-finite value at row {bad[0]}, column {bad[1]}"
            )
        if column_names is None:
            column_names = tuple(f"col{j}" for j in range(d))
        else:
            column_names = tuple(str(name) for name in column_names)
            if len(column_names) != d:
                raise ValueError(
                    f"got {len(column_names)} column names for {d} columns"
                )
        arr.setflags(write=False)
        self.values = arr
        self.column_names = column_names

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def column(self, j: int) -> np.ndarray:
        """Contiguous read-only view of column ``j``."""
        return self.values[:, j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.column_names == other.column_names
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, d={self.d}, columns={list(self.column_names)})"


def check_dims(dims: Sequence[int], d: int) -> tuple[int, ...]:
    """Validate a column-index selection: distinct, each in [0, d)."""
    dims = tuple(int(j) for j in dims)
    if len(set(dims)) != len(dims):
        raise ValueError(f"duplicate column indices in {list(dims)}")
    for j in dims:
        if not 0 <= j < d:
            raise ValueError(f"column index {j} out of range for d={d}")
    if not dims:
        raise ValueError("at least one column index is required")
    return dims


def select_subspace(ds: Dataset, dims: Sequence[int]) -> Dataset:
    """Project onto the given columns, keeping their order."""
    dims = check_dims(dims, ds.d)
    return Dataset(ds.values[:, dims], [ds.column_names[j] for j in dims])


def _parse_cell(cell: str, line_no: int, col_no: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(
            f"cannot parse {cell!r} as a number at line {line_no}, column {col_no}"
        ) from None
    if not np.isfinite(value):
        raise ValidationError(
            f"non-finite value {cell!r} at line {line_no}, column {col_no}"
        )
    return value


def _looks_numeric(row: Sequence[str]) -> bool:
    for cell in row:
        try:
            float(cell)
        except ValueError:
            return False
    return True


def read_csv(
    source: Iterable[str],
    has_header: bool | None = None,
    delimiter: str = ",",
) -> Dataset:
    """Parse CSV text lines into a Dataset.

    ``has_header=None`` auto-detects: the first row is treated as a header
    when any of its cells is non-numeric.  Errors carry 1-based file line
    numbers and column numbers.
    """
    reader = csv.reader(source, delimiter=delimiter)
    rows = [row for row in reader if row]
    if not rows:
        raise StructureError("empty input: no rows found")

    names: list[str] | None = None
    start_line = 1
    if has_header is None:
        has_header = not _looks_numeric(rows[0])
    if has_header:
        names = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        start_line = 2
        if not rows:
            raise StructureError("no data rows after the header")

    width = len(rows[0])
    data = np.empty((len(rows), width), dtype=np.float64, order="F")
    for i, row in enumerate(rows):
        line_no = start_line + i
        if len(row) != width:
            raise StructureError(
                f"ragged row at line {line_no}: expected {width} cells, got {len(row)}"
            )
        for j, cell in enumerate(row):
            data[i, j] = _parse_cell(cell.strip(), line_no, j + 1)
    if names is not None and len(names) != width:
        raise StructureError(
            f"header has {len(names)} names but rows have {width} cells"
        )
    return Dataset(data, names)


def load_csv(
    path: str,
    has_header: bool | None = None,
    delimiter: str = ",",
) -> Dataset:
    """Load a dataset from a CSV file (UTF-8, LF or CRLF)."""
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        return read_csv(fh, has_header=has_header, delimiter=delimiter)


def write_csv(ds: Dataset, fh, delimiter: str = ",", header: bool = True) -> None:
    """Write a dataset as CSV with shortest round-trip decimal values."""
    writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
    if header:
        writer.writerow(ds.column_names)
    for i in range(ds.n):
        writer.writerow([repr(float(v)) for v in ds.values[i, :]])


def save_csv(ds: Dataset, path: str, delimiter: str = ",", header: bool = True) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_csv(ds, fh, delimiter=delimiter, header=header)


def csv_string(ds: Dataset, delimiter: str = ",", header: bool = True) -> str:
    buf = io.StringIO()
    write_csv(ds, buf, delimiter=delimiter, header=header)
    return buf.getvalue()

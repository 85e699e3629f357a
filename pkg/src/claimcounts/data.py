"""Ingestion of count data and descriptive statistics.

Two CSV layouts are accepted:

* frequency table: header ``count,<group1>,<group2>,...`` and one row per
  distinct count value, carrying the number of units that exhibited it in
  each group (the restructured layout used for yearly claim counts);
* raw sample: a single ``count`` column, one row per observation.

Lines starting with ``#`` are comments (the simulator writes its metadata
that way).  All cells are integers; the parser reports the first offending
row and column.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .distributions import CountSample
from .errors import (
    DegenerateSampleError,
    InsufficientDataError,
    ParseError,
    UnknownGroupError,
)


@dataclass(frozen=True, eq=False)
class FrequencyTable:
    """Count values against per-group frequencies, rows ascending."""

    group_labels: tuple[str, ...]
    count_values: tuple[int, ...]
    frequencies: np.ndarray  # shape (len(count_values), len(group_labels))

    def __post_init__(self):
        labels = tuple(str(g) for g in self.group_labels)
        if not labels:
            raise ParseError("a frequency table needs at least one group column")
        if len(set(labels)) != len(labels):
            raise ParseError("group labels must be unique")
        counts = tuple(int(c) for c in self.count_values)
        if not counts:
            raise ParseError("a frequency table needs at least one row")
        if any(c < 0 for c in counts):
            raise ParseError("count values must be nonnegative")
        if any(b <= a for a, b in zip(counts, counts[1:])):
            raise ParseError("count values must be strictly increasing")
        freq = np.asarray(self.frequencies, dtype=np.int64)
        if freq.shape != (len(counts), len(labels)):
            raise ParseError(
                f"frequency matrix shape {freq.shape} does not match "
                f"{len(counts)} rows x {len(labels)} groups"
            )
        if freq.min() < 0:
            raise ParseError("frequencies must be nonnegative")
        freq.setflags(write=False)
        object.__setattr__(self, "group_labels", labels)
        object.__setattr__(self, "count_values", counts)
        object.__setattr__(self, "frequencies", freq)

    def group_totals(self) -> dict[str, int]:
        sums = self.frequencies.sum(axis=0)
        return {g: int(s) for g, s in zip(self.group_labels, sums)}


@dataclass(frozen=True)
class DescriptiveStats:
    """Moment summary of a sample; kurtosis is excess (normal = 0)."""

    mean: float
    std_dev: float
    skewness: float
    excess_kurtosis: float
    minimum: int
    maximum: int


def _cell_int(text: str, row: int, col: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"row {row}, column {col}: {text!r} is not an integer") from None


def _rows(stream) -> list[tuple[int, list[str]]]:
    """Non-empty, non-comment CSV rows with their 1-based line numbers."""
    if isinstance(stream, (str, bytes)):
        raise TypeError("pass a text stream (e.g. open(path) or io.StringIO)")
    out = []
    for lineno, row in enumerate(csv.reader(stream), start=1):
        if not row or (row[0].lstrip().startswith("#")):
            continue
        out.append((lineno, [c.strip() for c in row]))
    return out


def parse_frequency_csv(stream) -> FrequencyTable:
    """Parse the ``count,<group>,...`` layout into a FrequencyTable."""
    rows = _rows(stream)
    if not rows:
        raise ParseError("empty input")
    header_line, header = rows[0]
    if header[0].lower() != "count" or len(header) < 2:
        raise ParseError(
            f"row {header_line}: expected header 'count,<group>,...', got {','.join(header)!r}"
        )
    labels = tuple(header[1:])
    counts: list[int] = []
    freqs: list[list[int]] = []
    for lineno, row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(
                f"row {lineno}: expected {len(header)} cells, got {len(row)}"
            )
        value = _cell_int(row[0], lineno, 1)
        if counts and value <= counts[-1]:
            raise ParseError(
                f"row {lineno}, column 1: count {value} breaks the ascending order"
            )
        cells = [_cell_int(c, lineno, j) for j, c in enumerate(row[1:], start=2)]
        if any(c < 0 for c in cells):
            raise ParseError(f"row {lineno}: negative frequency")
        counts.append(value)
        freqs.append(cells)
    if not counts:
        raise ParseError("no data rows after the header")
    return FrequencyTable(labels, tuple(counts), np.array(freqs, dtype=np.int64))


def parse_counts_csv(stream) -> CountSample:
    """Parse a single-column ``count`` CSV into a CountSample."""
    rows = _rows(stream)
    if not rows:
        raise ParseError("empty input")
    header_line, header = rows[0]
    if len(header) != 1 or header[0].lower() != "count":
        raise ParseError(f"row {header_line}: expected a single 'count' header column")
    values = []
    for lineno, row in rows[1:]:
        if len(row) != 1:
            raise ParseError(f"row {lineno}: expected a single cell")
        v = _cell_int(row[0], lineno, 1)
        if v < 0:
            raise ParseError(f"row {lineno}: negative count")
        values.append(v)
    if not values:
        raise ParseError("no observations after the header")
    return CountSample(np.array(values, dtype=np.int64))


def parse_any_csv(stream) -> FrequencyTable | CountSample:
    """Detect the layout from the header and dispatch to the right parser."""
    text = stream.read()
    probe = _rows(io.StringIO(text))
    if not probe:
        raise ParseError("empty input")
    header = probe[0][1]
    if len(header) == 1:
        return parse_counts_csv(io.StringIO(text))
    return parse_frequency_csv(io.StringIO(text))


def table_to_csv(table: FrequencyTable) -> str:
    """Serialize back to the parser's CSV grammar (LF line endings)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["count", *table.group_labels])
    for value, row in zip(table.count_values, table.frequencies):
        writer.writerow([value, *(int(c) for c in row)])
    return buf.getvalue()


def expand(table: FrequencyTable, group: str) -> CountSample:
    """All observations of one group: each count repeated its frequency."""
    try:
        j = table.group_labels.index(group)
    except ValueError:
        raise UnknownGroupError(
            f"unknown group {group!r}; table has {', '.join(table.group_labels)}"
        ) from None
    col = table.frequencies[:, j]
    if col.sum() == 0:
        raise DegenerateSampleError(f"group {group!r} has no observations")
    return CountSample(np.repeat(np.array(table.count_values, dtype=np.int64), col))


def aggregate(table: FrequencyTable) -> CountSample:
    """Pooled sample across every group, in group order."""
    parts = [expand(table, g).values for g in table.group_labels]
    return CountSample(np.concatenate(parts))


def tabulate(sample: CountSample) -> list[tuple[int, int]]:
    """(value, frequency) pairs, ascending by value."""
    values, counts = sample.tabulated()
    return [(int(v), int(c)) for v, c in zip(values, counts)]


def describe(sample: CountSample) -> DescriptiveStats:
    """Moment statistics: sample std (n-1), moment skewness g1 and excess
    kurtosis g2 computed from central moments with divisor n."""
    if sample.n < 2:
        raise InsufficientDataError("descriptive statistics need at least 2 observations")
    x = sample.values.astype(float)
    n = sample.n
    mean = float(x.mean())
    centered = x - mean
    m2 = float((centered**2).mean())
    m3 = float((centered**3).mean())
    m4 = float((centered**4).mean())
    if m2 > 0.0:
        skew = m3 / m2**1.5
        kurt = m4 / m2**2 - 3.0
    else:
        skew = math.nan
        kurt = math.nan
    return DescriptiveStats(
        mean=mean,
        std_dev=float(x.std(ddof=1)),
        skewness=skew,
        excess_kurtosis=kurt,
        minimum=int(x.min()),
        maximum=int(x.max()),
    )

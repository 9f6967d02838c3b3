"""Reading and writing sweep rows as CSV."""
import csv
import logging
import math
from typing import IO, Iterable, NamedTuple

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "J",
    "C",
    "D",
    "epsilon",
    "beta",
    "t",
    "gamma_g",
    "gamma_g_unwrapped",
    "magnitude",
    "concurrence",
    "oracle_delta",
)
"""The columns every sweep writes, in order."""

POPULATION_COLUMNS = ("p1", "p2", "p3", "p4")
"""Trailing columns written only when populations are requested."""


class SweepRow(NamedTuple):
    """One evaluated grid point.

    Quantities that were not requested, or not defined at this point,
    are ``None`` and written as empty fields.

    """

    J: float
    C: float
    D: float
    epsilon: float
    beta: float
    t: float
    gamma_g: float | None
    gamma_g_unwrapped: float | None
    magnitude: float | None
    concurrence: float | None
    oracle_delta: float | None
    populations: tuple[float, ...] | None = None


def format_field(value: float | None) -> str:
    """Formats a value with enough digits to read it back exactly."""
    if value is None or math.isnan(value):
        return ""
    return format(value, ".17g")


class RowWriter:
    """Writes sweep rows to a text stream as comma-separated values.

    Rows must be written in grid order; the writer does no reordering.

    """

    def __init__(self, stream: IO[str], *, populations: bool = False) -> None:
        self.populations = populations
        self.rows_written = 0
        self._writer = csv.writer(stream, lineterminator="\n")

    @property
    def columns(self) -> tuple[str, ...]:
        if self.populations:
            return CSV_COLUMNS + POPULATION_COLUMNS
        return CSV_COLUMNS

    def write_header(self) -> None:
        self._writer.writerow(self.columns)

    def write_row(self, row: SweepRow) -> None:
        fields = [format_field(v) for v in row[: len(CSV_COLUMNS)]]
        if self.populations:
            values = row.populations or (None,) * len(POPULATION_COLUMNS)
            fields.extend(format_field(v) for v in values)
        self._writer.writerow(fields)
        self.rows_written += 1


def write_rows(
    rows: Iterable[SweepRow],
    stream: IO[str],
    *,
    populations: bool = False,
) -> int:
    """Writes a header followed by *rows*, returning how many rows were written."""
    writer = RowWriter(stream, populations=populations)
    writer.write_header()
    for row in rows:
        writer.write_row(row)
    log.debug("Wrote %d rows", writer.rows_written)
    return writer.rows_written


def read_rows(stream: IO[str]) -> list[SweepRow]:
    """Reads rows previously written by :func:`write_rows`.

    :raises ValueError: The header does not match the sweep columns.

    """
    reader = csv.reader(stream)
    header = tuple(next(reader, ()))
    if header not in (CSV_COLUMNS, CSV_COLUMNS + POPULATION_COLUMNS):
        raise ValueError(f"unexpected header {header!r}")

    rows = []
    for fields in reader:
        values = [_parse_field(f) for f in fields]
        populations = None
        if len(values) > len(CSV_COLUMNS) and any(v is not None for v in values[len(CSV_COLUMNS):]):
            populations = tuple(values[len(CSV_COLUMNS):])
        rows.append(SweepRow(*values[: len(CSV_COLUMNS)], populations=populations))
    return rows


def _parse_field(field: str) -> float | None:
    return float(field) if field else None

"""Load cumulative vaccination series from OWID-style CSV files.

Expected layout: delimited text, comma separator, header row, UTF-8.
Default column names are `location`, `date`, `total_vaccinations`; dates
are ISO 8601 (YYYY-MM-DD), decimal point is `.`, and an empty cell means
missing (not zero).  `regularize` turns the calendar into consecutive
integer days 1..T with gaps forward-filled, ready for the demand module.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass

from .errors import DataError

__all__ = ["RawSeries", "load_csv", "regularize"]

DEFAULT_LOCATION_COLUMN = "location"
DEFAULT_DATE_COLUMN = "date"
DEFAULT_VALUE_COLUMN = "total_vaccinations"


@dataclass(frozen=True)
class RawSeries:
    """Dated cumulative counts for one country; None marks a missing value."""

    country: str
    records: tuple[tuple[dt.date, float | None], ...]

    def __post_init__(self) -> None:
        records = tuple((date, value) for date, value in self.records)
        object.__setattr__(self, "records", records)
        if not self.country:
            raise DataError("country label is empty")
        if not records:
            raise DataError(f"no records for {self.country!r}")
        for earlier, later in zip(records, records[1:]):
            if later[0] <= earlier[0]:
                raise DataError(
                    f"dates must be strictly increasing, {later[0]} follows"
                    f" {earlier[0]}"
                )
        if all(value is None for _, value in records):
            raise DataError(f"series for {self.country!r} has no usable values")


def load_csv(
    path,
    country: str,
    date_column: str = DEFAULT_DATE_COLUMN,
    value_column: str = DEFAULT_VALUE_COLUMN,
    location_column: str = DEFAULT_LOCATION_COLUMN,
) -> RawSeries:
    """Rows of one country from a delimited file, parsed and validated."""
    records: list[tuple[dt.date, float | None]] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in (location_column, date_column, value_column):
            if column not in header:
                raise DataError(
                    f"column {column!r} missing from {path}; header has {header}"
                )
        for row in reader:
            label = (row[location_column] or "").strip()
            seen.add(label)
            if label != country:
                continue
            try:
                date = dt.date.fromisoformat((row[date_column] or "").strip())
            except ValueError:
                raise DataError(
                    f"unparseable date {row[date_column]!r} at row {reader.line_num}"
                    f" of {path}"
                ) from None
            cell = (row[value_column] or "").strip()
            if not cell:
                value = None
            else:
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"unparseable number {cell!r} at row {reader.line_num}"
                        f" of {path}"
                    ) from None
                if not math.isfinite(value) or value < 0.0:
                    raise DataError(
                        f"cumulative count must be finite and non-negative,"
                        f" got {cell!r} at row {reader.line_num} of {path}"
                    )
            records.append((date, value))
    if not records:
        available = ", ".join(sorted(label for label in seen if label))
        raise DataError(
            f"country {country!r} not found in {path}; available: {available}"
        )
    return RawSeries(country, tuple(records))


def regularize(raw: RawSeries) -> list[tuple[int, float]]:
    """Consecutive integer days 1..T with every day carrying a value.

    Day 1 is the first date with a reported value (leading missing records
    are dropped); day T is the last date in the series.  Calendar gaps and
    missing cells are forward-filled with the last known cumulative count,
    which preserves cumulativity without inventing demand.
    """
    records = raw.records
    start = next(i for i, (_, value) in enumerate(records) if value is not None)
    first_date = records[start][0]
    last_date = records[-1][0]
    reported = {
        date: value for date, value in records[start:] if value is not None
    }
    out: list[tuple[int, float]] = []
    value = records[start][1]
    for offset in range((last_date - first_date).days + 1):
        date = first_date + dt.timedelta(days=offset)
        if date in reported:
            value = reported[date]
        out.append((offset + 1, float(value)))
    return out

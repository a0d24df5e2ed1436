"""Daily tweet counts paired with daily rainfall."""

from __future__ import annotations

import csv
import logging
import math
from datetime import date
from pathlib import Path

from hwyimpact.errors import RainfallParseError
from hwyimpact.models import DailySeries, OverlayRow

logger = logging.getLogger(__name__)

RAINFALL_COLUMNS = ("date", "inches")


def read_rainfall(path: Path) -> dict[date, float]:
    """Read a `date,inches` CSV with ISO dates into a date -> inches mapping."""
    try:
        handle = Path(path).open(encoding="utf-8", newline="")
    except OSError as e:
        raise RainfallParseError(f"cannot read rainfall file: {e.strerror or e}", path=path) from e

    rainfall: dict[date, float] = {}
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(h.strip().lower() for h in header) != RAINFALL_COLUMNS:
            raise RainfallParseError("header must be 'date,inches'", path=path, line_no=1)
        for row in reader:
            line_no = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise RainfallParseError(
                    f"expected 2 columns, got {len(row)}", path=path, line_no=line_no
                )
            try:
                day = date.fromisoformat(row[0].strip())
            except ValueError:
                raise RainfallParseError(
                    f"invalid date {row[0]!r}", path=path, line_no=line_no
                ) from None
            try:
                inches = float(row[1])
            except ValueError:
                raise RainfallParseError(
                    f"invalid rainfall {row[1]!r}", path=path, line_no=line_no
                ) from None
            if not math.isfinite(inches) or inches < 0:
                raise RainfallParseError(
                    f"rainfall must be a non-negative number, got {row[1]!r}",
                    path=path,
                    line_no=line_no,
                )
            if day in rainfall:
                raise RainfallParseError(
                    f"duplicate date {day.isoformat()}", path=path, line_no=line_no
                )
            rainfall[day] = inches
    return rainfall


def overlay_series(daily: DailySeries, rainfall: dict[date, float]) -> list[OverlayRow]:
    """One row per day of *daily*; days without rainfall data get 0.0."""
    missing = [day for day in daily.counts if day not in rainfall]
    if missing:
        logger.warning(
            "No rainfall for %d day(s), using 0.0: %s",
            len(missing),
            ", ".join(d.isoformat() for d in missing),
        )
    return [
        OverlayRow(day=day, tweets=count, rainfall_in=rainfall.get(day, 0.0))
        for day, count in daily.counts.items()
    ]

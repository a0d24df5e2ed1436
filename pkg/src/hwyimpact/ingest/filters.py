"""Spatiotemporal filters and daily bucketing."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from datetime import date, datetime, timezone

from hwyimpact.models import BoundingBox, DailySeries, TimeWindow, TweetRecord

logger = logging.getLogger(__name__)


def local_date(ts: datetime, tz: timezone) -> date:
    """Calendar date of an instant in the study timezone."""
    return ts.astimezone(tz).date()


def filter_records(
    records: Sequence[TweetRecord], bbox: BoundingBox, window: TimeWindow
) -> list[TweetRecord]:
    """Keep records inside *bbox* whose local date falls in *window*, in input order."""
    tz = window.tz
    kept = [
        r
        for r in records
        if bbox.contains(r.lat, r.lon) and window.contains(local_date(r.timestamp, tz))
    ]
    dropped = len(records) - len(kept)
    if dropped:
        logger.info("Dropped %d of %d records outside the study area or window",
                    dropped, len(records))
    return kept


def count_by_day(records: Iterable[TweetRecord], tz: timezone) -> Counter[date]:
    """Partial per-day counts; merge partials with Counter addition."""
    return Counter(local_date(r.timestamp, tz) for r in records)


def daily_counts(records: Sequence[TweetRecord], window: TimeWindow) -> DailySeries:
    """Zero-filled per-day counts over every date of *window*."""
    counts = count_by_day(records, window.tz)
    outside = sum(n for day, n in counts.items() if not window.contains(day))
    if outside:
        logger.warning("%d records fall outside %s and are not counted", outside,
                       window.as_text())
    return DailySeries(counts={day: counts.get(day, 0) for day in window.days()})

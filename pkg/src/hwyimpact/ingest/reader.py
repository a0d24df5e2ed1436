"""JSON Lines corpus reader."""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Iterable, Iterator
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from hwyimpact.errors import (
    BadTimestamp,
    MalformedLine,
    MissingField,
    OutOfRangeCoordinate,
    RecordError,
)
from hwyimpact.models import ParseStats, TweetRecord

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ("id", "created_at", "lat", "lon", "text")

# Classic Twitter v1.1 created_at, e.g. "Wed Aug 23 12:00:00 +0000 2017"
_TWITTER_TIME_FORMAT = "%a %b %d %H:%M:%S %z %Y"


def parse_timestamp(value: Any) -> datetime:
    """Parse ISO-8601 or Twitter created_at into an aware UTC datetime.

    Naive timestamps are taken as UTC.
    """
    if not isinstance(value, str) or not value.strip():
        raise BadTimestamp("created_at", f"expected a timestamp string, got {value!r}")
    text = value.strip()
    iso = text[:-1] + "+00:00" if text.endswith(("Z", "z")) else text
    try:
        ts = datetime.fromisoformat(iso)
    except ValueError:
        try:
            ts = datetime.strptime(text, _TWITTER_TIME_FORMAT)
        except ValueError:
            raise BadTimestamp("created_at", f"unrecognized timestamp {text!r}") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _coordinate(obj: dict[str, Any], name: str, limit: float) -> float:
    value = obj[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise OutOfRangeCoordinate(name, f"expected a number, got {value!r}")
    try:
        value = float(value)
    except OverflowError:
        raise OutOfRangeCoordinate(name, "too large for a float") from None
    if not math.isfinite(value) or not -limit <= value <= limit:
        raise OutOfRangeCoordinate(name, f"{value} not within [-{limit:g}, {limit:g}]")
    return value


def parse_record(line: str) -> TweetRecord:
    """Parse one JSON Lines record into a validated TweetRecord."""
    try:
        obj = json.loads(line)
    except (json.JSONDecodeError, TypeError) as e:
        raise MalformedLine(detail=str(e)) from None
    if not isinstance(obj, dict):
        raise MalformedLine(detail="expected a JSON object")

    for name in REQUIRED_FIELDS:
        if name not in obj or obj[name] is None:
            raise MissingField(name)

    record_id = obj["id"]
    if isinstance(record_id, bool) or not isinstance(record_id, (str, int)):
        raise MalformedLine("id", f"expected a string, got {record_id!r}")
    record_id = str(record_id)
    if not record_id:
        raise MissingField("id", "empty id")

    text = obj["text"]
    if not isinstance(text, str):
        raise MalformedLine("text", f"expected a string, got {type(text).__name__}")

    return TweetRecord(
        id=record_id,
        timestamp=parse_timestamp(obj["created_at"]),
        lat=_coordinate(obj, "lat", 90.0),
        lon=_coordinate(obj, "lon", 180.0),
        text=text,
    )


def serialize_record(record: TweetRecord) -> str:
    """Write a record as one canonical JSON line (no trailing newline)."""
    ts = record.timestamp.astimezone(timezone.utc)
    created = ts.strftime("%Y-%m-%dT%H:%M:%S")
    if ts.microsecond:
        created += f".{ts.microsecond:06d}"
    return json.dumps(
        {
            "id": record.id,
            "created_at": created + "Z",
            "lat": record.lat,
            "lon": record.lon,
            "text": record.text,
        },
        ensure_ascii=False,
    )


def _decode(line: str | bytes) -> str:
    if isinstance(line, str):
        return line
    try:
        return line.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MalformedLine(detail=f"invalid UTF-8 at byte {e.start}") from None


def iter_records(
    lines: Iterable[str] | Iterable[bytes],
    *,
    strict: bool = False,
    stats: ParseStats | None = None,
    source: str | Path | None = None,
) -> Iterator[TweetRecord]:
    """Parse lines, skipping and counting bad ones unless *strict*.

    Byte lines are decoded one at a time, so a bad byte costs only its own
    line. Blank lines are ignored in both modes.
    """
    stats = stats if stats is not None else ParseStats()
    for line_no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        stats.lines += 1
        try:
            record = parse_record(_decode(line))
        except RecordError as e:
            e.at(line_no=line_no, path=source)
            if strict:
                raise
            kind = type(e).__name__
            stats.skipped[kind] = stats.skipped.get(kind, 0) + 1
            logger.debug("Skipping %s", e)
            continue
        stats.parsed += 1
        yield record


def read_corpus(path: Path, *, strict: bool = False) -> tuple[list[TweetRecord], ParseStats]:
    """Read a JSON Lines corpus file."""
    stats = ParseStats()
    with path.open("rb") as fh:
        records = list(iter_records(fh, strict=strict, stats=stats, source=path))
    if stats.skipped_total:
        detail = ", ".join(f"{k}={v}" for k, v in sorted(stats.skipped.items()))
        logger.warning(
            "%s: skipped %d of %d lines (%s)", path, stats.skipped_total, stats.lines, detail
        )
    return records, stats


def write_corpus(path: Path, records: Iterable[TweetRecord]) -> int:
    """Write records as JSON Lines; returns the number written."""
    n = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(serialize_record(record) + "\n")
            n += 1
    return n

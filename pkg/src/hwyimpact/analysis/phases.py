"""Disaster-timeline phase assignment."""

from __future__ import annotations

from collections.abc import Iterable
from datetime import date

from hwyimpact.ingest.filters import local_date
from hwyimpact.models import PhaseConfig, TweetRecord


def phase_of_day(day: date, phases: PhaseConfig) -> str | None:
    for phase in phases.phases:
        if phase.contains(day):
            return phase.name
    return None


def assign_phase(record: TweetRecord, phases: PhaseConfig) -> str | None:
    """Name of the phase containing the record's local date, or None."""
    return phase_of_day(local_date(record.timestamp, phases.tz), phases)


def split_by_phase(
    records: Iterable[TweetRecord], phases: PhaseConfig
) -> dict[str, list[TweetRecord]]:
    """Records per phase name in input order; records outside every phase are dropped."""
    buckets: dict[str, list[TweetRecord]] = {name: [] for name in phases.names}
    for record in records:
        name = assign_phase(record, phases)
        if name is not None:
            buckets[name].append(record)
    return buckets

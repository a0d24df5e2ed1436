"""Phase-normalized tweet intensity.

Intensity is a highway's average daily tweet count in a phase divided by
its average in the baseline phase. Arithmetic is done on exact fractions
and converted to float once, so the baseline row is exactly 1.0 and a
highway whose counts are all scaled by a constant keeps bit-identical
intensities.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from fractions import Fraction

from hwyimpact.analysis.phases import phase_of_day, split_by_phase
from hwyimpact.ingest.filters import local_date
from hwyimpact.models import HighwayDailyRow, IntensityRow, PhaseConfig, TimeWindow, TweetRecord


def _ratio(value: Fraction, baseline: Fraction) -> float | None:
    if baseline == 0:
        return None
    return float(value / baseline)


def intensity_rows(
    highway_id: str, counts: Mapping[str, int], phases: PhaseConfig
) -> list[IntensityRow]:
    """One row per phase from per-phase tweet counts of a single highway."""
    averages = {p.name: Fraction(counts.get(p.name, 0), p.days) for p in phases.phases}
    baseline = averages[phases.baseline_phase]
    return [
        IntensityRow(
            highway_id=highway_id,
            phase_name=p.name,
            tweet_count=counts.get(p.name, 0),
            days=p.days,
            avg_daily=float(averages[p.name]),
            intensity=_ratio(averages[p.name], baseline),
        )
        for p in phases.phases
    ]


def intensity_table(
    mapped: Mapping[str, Sequence[TweetRecord]], phases: PhaseConfig
) -> list[IntensityRow]:
    """Rows for every (highway, phase), highways in *mapped* order."""
    rows: list[IntensityRow] = []
    for highway_id, records in mapped.items():
        by_phase = split_by_phase(records, phases)
        counts = {name: len(recs) for name, recs in by_phase.items()}
        rows.extend(intensity_rows(highway_id, counts, phases))
    return rows


def highway_daily_series(
    mapped: Mapping[str, Sequence[TweetRecord]], phases: PhaseConfig, window: TimeWindow
) -> list[HighwayDailyRow]:
    """Per-highway daily counts over the window, each day divided by the baseline average."""
    tz = phases.tz
    base = phases.baseline
    rows: list[HighwayDailyRow] = []
    for highway_id, records in mapped.items():
        per_day = Counter(local_date(r.timestamp, tz) for r in records)
        baseline_total = sum(n for day, n in per_day.items() if base.contains(day))
        baseline_avg = Fraction(baseline_total, base.days)
        for day in window.days():
            count = per_day.get(day, 0)
            rows.append(
                HighwayDailyRow(
                    highway_id=highway_id,
                    day=day,
                    phase_name=phase_of_day(day, phases),
                    count=count,
                    daily_intensity=_ratio(Fraction(count), baseline_avg),
                )
            )
    return rows

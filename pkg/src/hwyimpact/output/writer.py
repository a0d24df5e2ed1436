"""Report file writer: CSV tables, GeoJSON layers and a Markdown summary.

Every file is a pure function of the report and run configuration (no
timestamps, fixed float formats, "\\n" line endings), so repeated runs
produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from pathlib import Path

from slugify import slugify

from hwyimpact.analysis.geo import feature_collection
from hwyimpact.models import (
    AssessmentReport,
    CorridorRow,
    DailySeries,
    GeoFeatureSet,
    HighwayDailyRow,
    IntensityRow,
    MappingResult,
    OverlayRow,
    RunConfig,
    RunStats,
    TopicRow,
)

NA = "NA"

INTENSITY_FILE = "intensity.csv"
TOPICS_FILE = "topics.csv"
OVERLAY_FILE = "overlay.csv"
DAILY_FILE = "daily.csv"
HIGHWAY_DAILY_FILE = "highway_daily.csv"
CORRIDOR_FILE = "corridor.csv"
EVIDENCE_FILE = "evidence.csv"
SUMMARY_FILE = "summary.md"
GEO_DIR = "geo"

EVIDENCE_HEADER = (
    "record_id", "highway", "term_class", "phrase", "span_start", "span_end", "neighbor",
)


def fmt_ratio(value: float | None) -> str:
    return NA if value is None else f"{value:.4f}"


def geo_filename(highway_id: str, phase_name: str) -> str:
    return f"{slugify(highway_id)}_{slugify(phase_name)}.geojson"


class OutputWriter:
    def __init__(self, output_dir: str | Path) -> None:
        self._base = Path(output_dir)
        self._base.mkdir(parents=True, exist_ok=True)

    @property
    def base_path(self) -> str:
        return str(self._base)

    def write_intensity(self, rows: Sequence[IntensityRow]) -> None:
        self._write_csv(
            INTENSITY_FILE,
            ("highway", "phase", "tweet_count", "avg_daily", "intensity"),
            (
                (r.highway_id, r.phase_name, r.tweet_count, f"{r.avg_daily:.4f}",
                 fmt_ratio(r.intensity))
                for r in rows
            ),
        )

    def write_topics(self, rows: Sequence[TopicRow]) -> None:
        self._write_csv(
            TOPICS_FILE,
            ("highway", "phase", "rank", "term", "doc_freq"),
            ((r.highway_id, r.phase_name, r.rank, r.term, r.doc_freq) for r in rows),
        )

    def write_geo(self, sets: Sequence[GeoFeatureSet]) -> list[Path]:
        geo_dir = self._base / GEO_DIR
        geo_dir.mkdir(exist_ok=True)
        paths: list[Path] = []
        for fs in sets:
            path = geo_dir / geo_filename(fs.highway_id, fs.phase_name)
            self._write(path, json.dumps(feature_collection(fs), indent=2) + "\n")
            paths.append(path)
        return paths

    def write_overlay(self, rows: Sequence[OverlayRow]) -> None:
        self._write_csv(
            OVERLAY_FILE,
            ("date", "tweets", "rainfall_in"),
            ((r.day.isoformat(), r.tweets, f"{r.rainfall_in:.2f}") for r in rows),
        )

    def write_daily(self, daily: DailySeries) -> None:
        self._write_csv(
            DAILY_FILE,
            ("date", "count"),
            ((day.isoformat(), n) for day, n in daily.counts.items()),
        )

    def write_highway_daily(self, rows: Sequence[HighwayDailyRow]) -> None:
        self._write_csv(
            HIGHWAY_DAILY_FILE,
            ("highway", "date", "phase", "count", "daily_intensity"),
            (
                (r.highway_id, r.day.isoformat(), r.phase_name or "", r.count,
                 fmt_ratio(r.daily_intensity))
                for r in rows
            ),
        )

    def write_corridor(self, rows: Sequence[CorridorRow]) -> None:
        self._write_csv(
            CORRIDOR_FILE,
            ("highway", "phase", "points", "within", "share", "median_distance_m"),
            (
                (
                    r.highway_id,
                    r.phase_name,
                    r.points,
                    r.within,
                    fmt_ratio(r.share),
                    NA if r.median_distance_m is None else f"{r.median_distance_m:.1f}",
                )
                for r in rows
            ),
        )

    def write_evidence(self, results: Iterable[MappingResult]) -> None:
        self._write_csv(
            EVIDENCE_FILE,
            EVIDENCE_HEADER,
            (
                (
                    result.record_id,
                    ev.highway_id,
                    ev.term_class.value,
                    ev.phrase,
                    ev.span_start,
                    ev.span_end,
                    ev.neighbor or "",
                )
                for result in results
                for ev in result.evidence
            ),
        )

    def write_summary(self, config: RunConfig, stats: RunStats) -> None:
        self._write(self._base / SUMMARY_FILE, render_summary(config, stats))

    def write_report(self, report: AssessmentReport, config: RunConfig) -> None:
        self.write_intensity(report.intensity)
        self.write_topics(report.topics)
        self.write_geo(report.geo)
        self.write_daily(report.daily)
        self.write_highway_daily(report.highway_daily)
        self.write_corridor(report.corridor)
        if report.overlay is not None:
            self.write_overlay(report.overlay)
        if config.write_evidence:
            self.write_evidence(report.mapping)
        self.write_summary(config, report.stats)

    def _write_csv(
        self, filename: str, header: Sequence[str], rows: Iterable[Sequence[object]]
    ) -> None:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(header)
        out.writerows(rows)
        self._write(self._base / filename, buf.getvalue())

    @staticmethod
    def _write(path: Path, content: str) -> None:
        path.write_text(content, encoding="utf-8", newline="")


def render_summary(config: RunConfig, stats: RunStats) -> str:
    def opt(path: Path | None, default: str) -> str:
        return default if path is None else str(path)

    lines = ["# hwyimpact run summary", "", "## Parameters", ""]
    lines.append("| Parameter | Value |")
    lines.append("|-----------|-------|")
    params = [
        ("input", str(config.input_path)),
        ("lexicon", opt(config.lexicon_path, "builtin-harvey")),
        ("bbox", config.bbox.as_text()),
        ("window", config.window.as_text()),
        ("utc_offset", config.utc_offset),
        ("phases", config.phases.as_text()),
        ("baseline_phase", config.phases.baseline_phase),
        ("adjacency_window", str(config.adjacency_window)),
        ("top_k", str(config.top_k)),
        ("stopwords", opt(config.stopword_path, "builtin")),
        ("rainfall", opt(config.rainfall_path, "none")),
        ("corridor_threshold_m", f"{config.corridor_threshold_m:g}"),
        ("mode", "strict" if config.strict else "lenient"),
        ("evidence", "yes" if config.write_evidence else "no"),
        ("output", str(config.output_dir)),
    ]
    lines.extend(f"| {k} | {v} |" for k, v in params)

    lines += ["", "## Records", ""]
    lines.append("| Stage | Count |")
    lines.append("|-------|-------|")
    lines.append(f"| lines read | {stats.parse.lines} |")
    lines.append(f"| records parsed | {stats.records_in} |")
    lines.append(f"| lines skipped | {stats.parse.skipped_total} |")
    lines.append(f"| in study area and window | {stats.records_filtered} |")
    lines.append(f"| mapped to a highway | {stats.records_mapped} |")

    if stats.parse.skipped:
        lines += ["", "## Skipped lines", ""]
        lines.append("| Reason | Count |")
        lines.append("|--------|-------|")
        lines.extend(f"| {k} | {v} |" for k, v in sorted(stats.parse.skipped.items()))

    lines += ["", "## Per-highway totals", ""]
    lines.append("| Highway | Tweets |")
    lines.append("|---------|--------|")
    lines.extend(f"| {hid} | {n} |" for hid, n in stats.per_highway.items())
    return "\n".join(lines) + "\n"

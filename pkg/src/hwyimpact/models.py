"""Pydantic data models for hwyimpact."""

from __future__ import annotations

import re
from datetime import date, datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Annotated

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, field_validator, model_validator

DEFAULT_UTC_OFFSET = "-05:00"

_OFFSET_RE = re.compile(r"^([+-])(\d{2}):(\d{2})$")


def parse_utc_offset(offset: str) -> timezone:
    """'-05:00' -> timezone(timedelta(hours=-5))."""
    m = _OFFSET_RE.match(offset.strip())
    if not m:
        raise ValueError(f"UTC offset must look like -05:00, got '{offset}'")
    sign, hours, minutes = m.groups()
    delta = timedelta(hours=int(hours), minutes=int(minutes))
    if delta > timedelta(hours=14) or int(minutes) >= 60:
        raise ValueError(f"UTC offset out of range: '{offset}'")
    return timezone(-delta if sign == "-" else delta)


def _check_offset(v: str) -> str:
    parse_utc_offset(v)
    return v.strip()


UtcOffset = Annotated[str, AfterValidator(_check_offset)]


class Verbosity(str, Enum):
    VERBOSE = "verbose"
    QUIET = "quiet"


class TermClass(str, Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"
    HIGHWAY_TERM = "highway-term"


# --- ingest ---


class TweetRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    timestamp: datetime
    lat: float
    lon: float
    text: str

    @field_validator("id")
    @classmethod
    def id_not_empty(cls, v: str) -> str:
        if not v:
            raise ValueError("id must be non-empty")
        return v

    @field_validator("timestamp")
    @classmethod
    def timestamp_utc(cls, v: datetime) -> datetime:
        if v.tzinfo is None:
            return v.replace(tzinfo=timezone.utc)
        return v.astimezone(timezone.utc)

    @field_validator("lat")
    @classmethod
    def lat_in_range(cls, v: float) -> float:
        if not -90.0 <= v <= 90.0:
            raise ValueError("lat must be within [-90, 90]")
        return v

    @field_validator("lon")
    @classmethod
    def lon_in_range(cls, v: float) -> float:
        if not -180.0 <= v <= 180.0:
            raise ValueError("lon must be within [-180, 180]")
        return v


class BoundingBox(BaseModel):
    model_config = ConfigDict(frozen=True)

    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float

    @model_validator(mode="after")
    def ordered(self) -> BoundingBox:
        if not self.lat_min < self.lat_max:
            raise ValueError("lat_min must be less than lat_max")
        if not self.lon_min < self.lon_max:
            raise ValueError("lon_min must be less than lon_max")
        return self

    def contains(self, lat: float, lon: float) -> bool:
        return self.lat_min <= lat <= self.lat_max and self.lon_min <= lon <= self.lon_max

    def as_text(self) -> str:
        return f"{self.lat_min},{self.lat_max},{self.lon_min},{self.lon_max}"


HOUSTON_BBOX = BoundingBox(
    lat_min=29.427926, lat_max=30.157266, lon_min=-95.902705, lon_max=-94.997805
)


class TimeWindow(BaseModel):
    model_config = ConfigDict(frozen=True)

    start_date: date
    end_date: date
    utc_offset: UtcOffset = DEFAULT_UTC_OFFSET

    @model_validator(mode="after")
    def ordered(self) -> TimeWindow:
        if self.start_date > self.end_date:
            raise ValueError("start_date must not be after end_date")
        return self

    @property
    def tz(self) -> timezone:
        return parse_utc_offset(self.utc_offset)

    def days(self) -> list[date]:
        n = (self.end_date - self.start_date).days + 1
        return [self.start_date + timedelta(days=i) for i in range(n)]

    def contains(self, day: date) -> bool:
        return self.start_date <= day <= self.end_date

    def as_text(self) -> str:
        return f"{self.start_date.isoformat()}:{self.end_date.isoformat()}"


HARVEY_WINDOW = TimeWindow(start_date=date(2017, 8, 23), end_date=date(2017, 9, 5))


class DailySeries(BaseModel):
    counts: dict[date, int] = Field(default_factory=dict)

    @field_validator("counts")
    @classmethod
    def increasing_non_negative(cls, v: dict[date, int]) -> dict[date, int]:
        days = list(v)
        if any(b <= a for a, b in zip(days, days[1:])):
            raise ValueError("dates must be strictly increasing")
        if any(c < 0 for c in v.values()):
            raise ValueError("counts must be non-negative")
        return v

    @property
    def total(self) -> int:
        return sum(self.counts.values())


class ParseStats(BaseModel):
    lines: int = 0
    parsed: int = 0
    skipped: dict[str, int] = Field(default_factory=dict)

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped.values())


# --- lexicon ---


class TermPhrase(BaseModel):
    model_config = ConfigDict(frozen=True)

    tokens: tuple[str, ...]

    @field_validator("tokens")
    @classmethod
    def well_formed(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        if not v:
            raise ValueError("a term phrase needs at least one token")
        for tok in v:
            if not tok or tok != tok.lower() or any(ch.isspace() for ch in tok):
                raise ValueError(f"invalid phrase token '{tok}'")
        return v

    @classmethod
    def parse(cls, text: str) -> TermPhrase:
        return cls(tokens=tuple(text.lower().split()))

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        return self.text


LatLon = tuple[float, float]


class HighwayEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    display_name: str
    direct_terms: tuple[TermPhrase, ...]
    indirect_terms: tuple[TermPhrase, ...]
    polyline: tuple[LatLon, ...] | None = None

    @property
    def search_tokens(self) -> frozenset[str]:
        """Every token of every direct and indirect phrase."""
        return frozenset(
            tok for phrase in (*self.direct_terms, *self.indirect_terms) for tok in phrase.tokens
        )


class Lexicon(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[HighwayEntry, ...]
    highway_terms: tuple[str, ...]

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    @property
    def highway_term_set(self) -> frozenset[str]:
        return frozenset(self.highway_terms)

    def entry(self, highway_id: str) -> HighwayEntry:
        for e in self.entries:
            if e.id == highway_id:
                return e
        raise KeyError(highway_id)


# --- cleaning ---


class CleanedTweet(BaseModel):
    model_config = ConfigDict(frozen=True)

    record_id: str
    tokens: tuple[str, ...] = ()


class StopwordList(BaseModel):
    model_config = ConfigDict(frozen=True)

    words: frozenset[str]

    @field_validator("words")
    @classmethod
    def required_words(cls, v: frozenset[str]) -> frozenset[str]:
        if not v:
            raise ValueError("stopword list must not be empty")
        if any(w != w.lower() for w in v):
            raise ValueError("stopwords must be lowercase")
        missing = {"is", "of", "often"} - v
        if missing:
            raise ValueError(f"stopword list must contain {', '.join(sorted(missing))}")
        return v

    def __contains__(self, token: object) -> bool:
        return token in self.words


# --- mapping ---


class MappingConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    adjacency_window: int = 1

    @field_validator("adjacency_window")
    @classmethod
    def window_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("adjacency_window must be at least 1")
        return v


class MatchEvidence(BaseModel):
    model_config = ConfigDict(frozen=True)

    highway_id: str
    term_class: TermClass
    phrase: str
    span_start: int
    span_end: int
    neighbor: str | None = None


class MappingResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    record_id: str
    highways: tuple[str, ...] = ()
    evidence: tuple[MatchEvidence, ...] = ()


# --- assess ---


class Phase(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    start_date: date
    end_date: date

    @model_validator(mode="after")
    def ordered(self) -> Phase:
        if not self.name:
            raise ValueError("phase name must be non-empty")
        if self.start_date > self.end_date:
            raise ValueError(f"phase '{self.name}' starts after it ends")
        return self

    @property
    def days(self) -> int:
        return (self.end_date - self.start_date).days + 1

    def contains(self, day: date) -> bool:
        return self.start_date <= day <= self.end_date


class PhaseConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    phases: tuple[Phase, ...]
    baseline_phase: str = "pre-peak"
    utc_offset: UtcOffset = DEFAULT_UTC_OFFSET

    @model_validator(mode="after")
    def ordered_non_overlapping(self) -> PhaseConfig:
        if not self.phases:
            raise ValueError("at least one phase is required")
        names = [p.name for p in self.phases]
        if len(set(names)) != len(names):
            raise ValueError("phase names must be unique")
        for a, b in zip(self.phases, self.phases[1:]):
            if b.start_date <= a.end_date:
                raise ValueError(f"phase '{b.name}' overlaps or precedes '{a.name}'")
        if self.phases[0].name != self.baseline_phase:
            raise ValueError(f"baseline phase '{self.baseline_phase}' must be the first phase")
        return self

    @property
    def tz(self) -> timezone:
        return parse_utc_offset(self.utc_offset)

    @property
    def names(self) -> list[str]:
        return [p.name for p in self.phases]

    @property
    def baseline(self) -> Phase:
        return self.phases[0]

    def as_text(self) -> str:
        return ",".join(
            f"{p.name}={p.start_date.isoformat()}:{p.end_date.isoformat()}" for p in self.phases
        )


HARVEY_PHASES = PhaseConfig(
    phases=(
        Phase(name="pre-peak", start_date=date(2017, 8, 23), end_date=date(2017, 8, 25)),
        Phase(name="peak", start_date=date(2017, 8, 26), end_date=date(2017, 8, 30)),
        Phase(name="post-peak", start_date=date(2017, 8, 31), end_date=date(2017, 9, 5)),
    ),
)


class IntensityRow(BaseModel):
    highway_id: str
    phase_name: str
    tweet_count: int
    days: int
    avg_daily: float
    intensity: float | None = None


class TopicRow(BaseModel):
    highway_id: str
    phase_name: str
    rank: int
    term: str
    doc_freq: int


class GeoPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    lat: float
    lon: float
    record_id: str


class GeoFeatureSet(BaseModel):
    highway_id: str
    phase_name: str
    points: list[GeoPoint] = Field(default_factory=list)


class CorridorRow(BaseModel):
    highway_id: str
    phase_name: str
    points: int = 0
    within: int = 0
    share: float | None = None
    median_distance_m: float | None = None


class HighwayDailyRow(BaseModel):
    highway_id: str
    day: date
    phase_name: str | None = None
    count: int = 0
    daily_intensity: float | None = None


class OverlayRow(BaseModel):
    day: date
    tweets: int
    rainfall_in: float


class RunStats(BaseModel):
    parse: ParseStats = Field(default_factory=ParseStats)
    records_in: int = 0
    records_filtered: int = 0
    records_mapped: int = 0
    per_highway: dict[str, int] = Field(default_factory=dict)


class AssessmentReport(BaseModel):
    stats: RunStats = Field(default_factory=RunStats)
    daily: DailySeries = Field(default_factory=DailySeries)
    intensity: list[IntensityRow] = Field(default_factory=list)
    highway_daily: list[HighwayDailyRow] = Field(default_factory=list)
    topics: list[TopicRow] = Field(default_factory=list)
    geo: list[GeoFeatureSet] = Field(default_factory=list)
    corridor: list[CorridorRow] = Field(default_factory=list)
    overlay: list[OverlayRow] | None = None
    mapping: list[MappingResult] = Field(default_factory=list)


# --- run configuration ---


class RunConfig(BaseModel):
    input_path: Path
    lexicon_path: Path | None = None
    bbox: BoundingBox = HOUSTON_BBOX
    window: TimeWindow = HARVEY_WINDOW
    utc_offset: UtcOffset = DEFAULT_UTC_OFFSET
    phases: PhaseConfig = HARVEY_PHASES
    adjacency_window: int = 1
    top_k: int = 5
    stopword_path: Path | None = None
    rainfall_path: Path | None = None
    output_dir: Path = Path("./hwyimpact-output")
    strict: bool = False
    corridor_threshold_m: float = 1000.0
    write_evidence: bool = True
    verbosity: Verbosity = Verbosity.QUIET

    @field_validator("top_k")
    @classmethod
    def top_k_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("top_k must be at least 1")
        return v

    @field_validator("adjacency_window")
    @classmethod
    def adjacency_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("adjacency_window must be at least 1")
        return v

    @field_validator("corridor_threshold_m")
    @classmethod
    def threshold_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("corridor_threshold_m must be positive")
        return v

    @model_validator(mode="after")
    def consistent(self) -> RunConfig:
        if self.window.utc_offset != self.utc_offset:
            raise ValueError("window utc_offset differs from the run utc_offset")
        if self.phases.utc_offset != self.utc_offset:
            raise ValueError("phase utc_offset differs from the run utc_offset")
        for p in self.phases.phases:
            if not (self.window.contains(p.start_date) and self.window.contains(p.end_date)):
                raise ValueError(f"phase '{p.name}' lies outside the time window")
        return self

    @property
    def mapping(self) -> MappingConfig:
        return MappingConfig(adjacency_window=self.adjacency_window)

    def missing_paths(self) -> list[Path]:
        paths = [self.input_path, self.lexicon_path, self.stopword_path, self.rainfall_path]
        return [p for p in paths if p is not None and not p.is_file()]

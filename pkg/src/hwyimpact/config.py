"""Application configuration via environment variables and run config files."""

from __future__ import annotations

import json
from datetime import date
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError
from pydantic_settings import BaseSettings

from hwyimpact.errors import ConfigError
from hwyimpact.models import (
    DEFAULT_UTC_OFFSET,
    HARVEY_PHASES,
    HARVEY_WINDOW,
    BoundingBox,
    Phase,
    PhaseConfig,
    RunConfig,
    TimeWindow,
)

HWYIMPACT_CONFIG_DIR = Path.home() / ".hwyimpact"
HWYIMPACT_CONFIG_FILE = HWYIMPACT_CONFIG_DIR / "config"


def load_hwyimpact_config() -> None:
    """Load hwyimpact defaults from all dotenv sources.

    Priority (highest wins): env vars > .env (local) > ~/.hwyimpact/config (global).

    Each load_dotenv call with override=False only sets vars not already
    present, so we load highest-priority sources first.
    """
    load_dotenv(override=False)
    if HWYIMPACT_CONFIG_FILE.is_file():
        load_dotenv(HWYIMPACT_CONFIG_FILE, override=False)


PATH_FIELDS = ("input_path", "lexicon_path", "stopword_path", "rainfall_path", "output_dir")


class AppSettings(BaseSettings):
    model_config = {"env_prefix": "HWYIMPACT_"}

    output_dir: str = "./hwyimpact-output"
    utc_offset: str = DEFAULT_UTC_OFFSET
    top_k: int = 5
    adjacency_window: int = 1
    corridor_threshold_m: float = 1000.0
    log_level: str = "WARNING"

    def run_defaults(self) -> dict[str, Any]:
        """RunConfig field values supplied by the environment."""
        return {
            "output_dir": self.output_dir,
            "utc_offset": self.utc_offset,
            "top_k": self.top_k,
            "adjacency_window": self.adjacency_window,
            "corridor_threshold_m": self.corridor_threshold_m,
        }


def read_run_config(path: Path) -> dict[str, Any]:
    """Read a JSON run config file into RunConfig-shaped values.

    Keys are RunConfig field names. Relative paths inside the file resolve
    against the file's own directory.
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"{path}: cannot read run config: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}: invalid JSON: {e.msg}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: run config must be a JSON object")

    unknown = sorted(set(data) - set(RunConfig.model_fields))
    if unknown:
        raise ConfigError(f"{path}: unknown run config keys: {', '.join(unknown)}")

    base = path.parent
    for key in PATH_FIELDS:
        value = data.get(key)
        if isinstance(value, str) and not Path(value).is_absolute():
            data[key] = str(base / value)
    return data


# --- text forms shared by CLI flags and run config files ---


def _parse_date(text: str, what: str) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise ConfigError(f"{what}: invalid date '{text}' (expected YYYY-MM-DD)") from None


def parse_bbox(text: str) -> BoundingBox:
    """'lat_min,lat_max,lon_min,lon_max' -> BoundingBox."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ConfigError(f"bbox must be lat_min,lat_max,lon_min,lon_max, got '{text}'")
    try:
        lat_min, lat_max, lon_min, lon_max = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"bbox values must be numbers, got '{text}'") from None
    try:
        return BoundingBox(lat_min=lat_min, lat_max=lat_max, lon_min=lon_min, lon_max=lon_max)
    except ValidationError as e:
        raise ConfigError(f"bbox '{text}': {_first_error(e)}") from None


def _date_range(text: str, what: str) -> tuple[date, date]:
    start, sep, end = text.partition(":")
    if not sep:
        raise ConfigError(f"{what} must be start:end, got '{text}'")
    return _parse_date(start, what), _parse_date(end, what)


def parse_window(text: str, utc_offset: str = DEFAULT_UTC_OFFSET) -> TimeWindow:
    """'2017-08-23:2017-09-05' -> TimeWindow."""
    start, end = _date_range(text, "window")
    try:
        return TimeWindow(start_date=start, end_date=end, utc_offset=utc_offset)
    except ValidationError as e:
        raise ConfigError(f"window '{text}': {_first_error(e)}") from None


def parse_phases(text: str, utc_offset: str = DEFAULT_UTC_OFFSET) -> PhaseConfig:
    """'pre-peak=2017-08-23:2017-08-25,peak=...' -> PhaseConfig.

    The first phase is the baseline.
    """
    phases: list[Phase] = []
    for item in text.split(","):
        name, sep, span = item.partition("=")
        if not sep or not name.strip():
            raise ConfigError(f"phase must be name=start:end, got '{item}'")
        start, end = _date_range(span, f"phase '{name.strip()}'")
        try:
            phases.append(Phase(name=name.strip(), start_date=start, end_date=end))
        except ValidationError as e:
            raise ConfigError(f"phase '{item}': {_first_error(e)}") from None
    try:
        return PhaseConfig(
            phases=tuple(phases), baseline_phase=phases[0].name, utc_offset=utc_offset
        )
    except ValidationError as e:
        raise ConfigError(f"phases '{text}': {_first_error(e)}") from None


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    loc = ".".join(str(p) for p in err["loc"])
    msg = str(err["msg"]).removeprefix("Value error, ")
    return f"{loc}: {msg}" if loc else msg


def build_run_config(
    flags: dict[str, Any],
    file_values: dict[str, Any] | None = None,
    settings: AppSettings | None = None,
    *,
    check_paths: bool = True,
) -> RunConfig:
    """Merge flag > run config file > environment > default into a RunConfig.

    Flags whose value is None are treated as unset. Text forms of bbox,
    window and phases are parsed; window and phases inherit the run's
    UTC offset when not given explicitly.
    """
    settings = settings or AppSettings()
    merged: dict[str, Any] = settings.run_defaults()
    merged.update(file_values or {})
    merged.update({k: v for k, v in flags.items() if v is not None})

    offset = str(merged.get("utc_offset", DEFAULT_UTC_OFFSET))
    bbox = merged.get("bbox")
    if isinstance(bbox, str):
        merged["bbox"] = parse_bbox(bbox)
    window = merged.get("window")
    if window is None:
        merged["window"] = {
            "start_date": HARVEY_WINDOW.start_date,
            "end_date": HARVEY_WINDOW.end_date,
            "utc_offset": offset,
        }
    elif isinstance(window, str):
        merged["window"] = parse_window(window, offset)
    elif isinstance(window, dict):
        merged["window"] = {"utc_offset": offset, **window}
    phases = merged.get("phases")
    if phases is None:
        merged["phases"] = {
            "phases": [p.model_dump() for p in HARVEY_PHASES.phases],
            "baseline_phase": HARVEY_PHASES.baseline_phase,
            "utc_offset": offset,
        }
    elif isinstance(phases, str):
        merged["phases"] = parse_phases(phases, offset)
    elif isinstance(phases, dict):
        merged["phases"] = {"utc_offset": offset, **phases}

    try:
        config = RunConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigError(f"invalid run configuration: {_first_error(e)}") from None
    if check_paths:
        missing = config.missing_paths()
        if missing:
            raise ConfigError(f"file not found: {missing[0]}")
    return config

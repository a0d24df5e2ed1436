"""Highway lexicon files: loading, validation and serialization.

A lexicon file is JSON with a top-level ``highway_terms`` array and a
``highways`` array of ``{id, name, direct, indirect, polyline?}`` objects.
Polylines are arrays of ``[lat, lon]`` pairs.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from hwyimpact.errors import (
    CrossHighwayDirectTermCollision,
    DuplicateHighwayId,
    EmptyTermSet,
    InvalidPolyline,
    LexiconParseError,
)
from hwyimpact.models import HighwayEntry, LatLon, Lexicon, TermPhrase

BUILTIN_LEXICON = "harvey.json"


def _phrases(raw: Any, highway_id: str, key: str) -> tuple[TermPhrase, ...]:
    if raw is None:
        raw = []
    if not isinstance(raw, list) or not all(isinstance(p, str) for p in raw):
        raise LexiconParseError(f"highway '{highway_id}': '{key}' must be an array of strings")
    phrases: list[TermPhrase] = []
    for text in raw:
        if not text.split():
            raise LexiconParseError(f"highway '{highway_id}': blank {key} term")
        phrase = TermPhrase.parse(text)
        if phrase not in phrases:
            phrases.append(phrase)
    if not phrases:
        raise EmptyTermSet(highway_id, key)
    return tuple(phrases)


def _polyline(raw: Any, highway_id: str) -> tuple[LatLon, ...] | None:
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise InvalidPolyline(f"highway '{highway_id}': polyline must be an array")
    vertices: list[LatLon] = []
    for vertex in raw:
        if (
            not isinstance(vertex, list)
            or len(vertex) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in vertex)
        ):
            raise InvalidPolyline(f"highway '{highway_id}': vertex {vertex!r} is not [lat, lon]")
        lat, lon = float(vertex[0]), float(vertex[1])
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            raise InvalidPolyline(f"highway '{highway_id}': vertex {vertex!r} out of range")
        vertices.append((lat, lon))
    if len(vertices) < 2:
        raise InvalidPolyline(f"highway '{highway_id}': polyline needs at least 2 vertices")
    return tuple(vertices)


def _highway_terms(raw: Any) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(t, str) for t in raw):
        raise LexiconParseError("'highway_terms' must be an array of strings")
    terms: list[str] = []
    for t in raw:
        token = t.strip().lower()
        if not token or len(token.split()) != 1:
            raise LexiconParseError(f"highway term {t!r} must be a single token")
        if token not in terms:
            terms.append(token)
    if not terms:
        raise LexiconParseError("'highway_terms' must not be empty")
    return tuple(terms)


def parse_lexicon(data: Any) -> Lexicon:
    """Validate a decoded lexicon document and build the Lexicon."""
    if not isinstance(data, dict):
        raise LexiconParseError("lexicon must be a JSON object")
    if "highways" not in data or not isinstance(data["highways"], list):
        raise LexiconParseError("lexicon needs a 'highways' array")
    highway_terms = _highway_terms(data.get("highway_terms"))

    entries: list[HighwayEntry] = []
    seen_ids: set[str] = set()
    direct_owner: dict[TermPhrase, str] = {}
    for raw in data["highways"]:
        if not isinstance(raw, dict):
            raise LexiconParseError("each highway must be a JSON object")
        highway_id = raw.get("id")
        if not isinstance(highway_id, str) or not highway_id.strip():
            raise LexiconParseError("each highway needs a non-empty string 'id'")
        highway_id = highway_id.strip()
        if highway_id in seen_ids:
            raise DuplicateHighwayId(highway_id)
        seen_ids.add(highway_id)

        name = raw.get("name", highway_id)
        if not isinstance(name, str):
            raise LexiconParseError(f"highway '{highway_id}': 'name' must be a string")

        direct = _phrases(raw.get("direct"), highway_id, "direct")
        indirect = _phrases(raw.get("indirect"), highway_id, "indirect")
        for phrase in direct:
            owner = direct_owner.setdefault(phrase, highway_id)
            if owner != highway_id:
                raise CrossHighwayDirectTermCollision(phrase.text, owner, highway_id)

        entries.append(
            HighwayEntry(
                id=highway_id,
                display_name=name,
                direct_terms=direct,
                indirect_terms=indirect,
                polyline=_polyline(raw.get("polyline"), highway_id),
            )
        )
    return Lexicon(entries=tuple(entries), highway_terms=highway_terms)


def load_lexicon(source: Path) -> Lexicon:
    """Load and validate a lexicon JSON file."""
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise LexiconParseError(f"{source}:{e.lineno}: invalid JSON: {e.msg}") from e
    except OSError as e:
        raise LexiconParseError(f"{source}: cannot read lexicon: {e.strerror or e}") from e
    return parse_lexicon(data)


@lru_cache(maxsize=1)
def builtin_harvey_lexicon() -> Lexicon:
    """The bundled Houston lexicon: I-45, I-10, I-69, I-610 and SHT."""
    data = resources.files("hwyimpact.lexicon").joinpath("data").joinpath(BUILTIN_LEXICON)
    return parse_lexicon(json.loads(data.read_text(encoding="utf-8")))


def dump_lexicon(lexicon: Lexicon) -> dict[str, Any]:
    """Lexicon -> JSON-ready document (inverse of parse_lexicon)."""
    highways: list[dict[str, Any]] = []
    for e in lexicon.entries:
        item: dict[str, Any] = {
            "id": e.id,
            "name": e.display_name,
            "direct": [p.text for p in e.direct_terms],
            "indirect": [p.text for p in e.indirect_terms],
        }
        if e.polyline is not None:
            item["polyline"] = [[lat, lon] for lat, lon in e.polyline]
        highways.append(item)
    return {"highway_terms": list(lexicon.highway_terms), "highways": highways}


def write_lexicon(path: Path, lexicon: Lexicon) -> None:
    path.write_text(json.dumps(dump_lexicon(lexicon), indent=2) + "\n", encoding="utf-8")

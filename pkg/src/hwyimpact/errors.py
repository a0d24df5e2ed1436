"""Exception hierarchy for hwyimpact.

Every error raised on bad input derives from HwyImpactError so the CLI can
turn it into a one-line diagnostic instead of a traceback.
"""

from __future__ import annotations

from pathlib import Path


class HwyImpactError(Exception):
    """Base class for all hwyimpact errors."""


def _where(path: str | Path | None, line_no: int | None) -> str:
    if path is None and line_no is None:
        return ""
    if line_no is None:
        return f"{path}: "
    if path is None:
        return f"line {line_no}: "
    return f"{path}:{line_no}: "


# --- ingest ---


class RecordError(HwyImpactError):
    """A corpus line that cannot become a TweetRecord."""

    reason = "invalid record"

    def __init__(
        self,
        field: str | None = None,
        detail: str = "",
        *,
        line_no: int | None = None,
        path: str | Path | None = None,
    ) -> None:
        self.field = field
        self.detail = detail
        self.line_no = line_no
        self.path = path
        super().__init__(self._message())

    def _message(self) -> str:
        msg = self.reason
        if self.field:
            msg += f" ({self.field})"
        if self.detail:
            msg += f": {self.detail}"
        return _where(self.path, self.line_no) + msg

    def at(self, *, line_no: int, path: str | Path | None = None) -> RecordError:
        """Attach file/line context and refresh the message."""
        self.line_no = line_no
        self.path = path
        self.args = (self._message(),)
        return self

    def __str__(self) -> str:
        return self._message()


class MalformedLine(RecordError):
    reason = "malformed line"


class MissingField(RecordError):
    reason = "missing field"


class OutOfRangeCoordinate(RecordError):
    reason = "coordinate out of range"


class BadTimestamp(RecordError):
    reason = "bad timestamp"


# --- lexicon ---


class LexiconError(HwyImpactError):
    """A lexicon file or entry that violates the lexicon invariants."""


class LexiconParseError(LexiconError):
    pass


class DuplicateHighwayId(LexiconError):
    def __init__(self, highway_id: str) -> None:
        self.highway_id = highway_id
        super().__init__(f"duplicate highway id '{highway_id}'")


class CrossHighwayDirectTermCollision(LexiconError):
    def __init__(self, phrase: str, first: str, second: str) -> None:
        self.phrase = phrase
        self.highways = (first, second)
        super().__init__(f"direct term '{phrase}' is used by both '{first}' and '{second}'")


class EmptyTermSet(LexiconError):
    def __init__(self, highway_id: str, term_class: str) -> None:
        self.highway_id = highway_id
        self.term_class = term_class
        super().__init__(f"highway '{highway_id}' has no {term_class} terms")


class InvalidPolyline(LexiconError):
    pass


# --- assess ---


class DegeneratePolyline(HwyImpactError):
    def __init__(self, vertices: int) -> None:
        self.vertices = vertices
        super().__init__(f"polyline needs at least 2 vertices, got {vertices}")


class RainfallParseError(HwyImpactError):
    def __init__(self, detail: str, *, path: str | Path | None = None, line_no: int | None = None):
        self.path = path
        self.line_no = line_no
        super().__init__(_where(path, line_no) + detail)


# --- cli / config ---


class ConfigError(HwyImpactError):
    pass

"""Abstract highway mapper with the shared relatedness rules."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence

from hwyimpact.models import (
    CleanedTweet,
    Lexicon,
    MappingConfig,
    MappingResult,
    MatchEvidence,
    TermClass,
)

Span = tuple[int, int]


def find_neighbor(
    tokens: Sequence[str], span: Span, window: int, is_highway_term: set[int] | frozenset[int]
) -> int | None:
    """Position of the closest highway term outside *span*, or None.

    Looks up to *window* positions before the start and after the end.
    When a left and a right candidate are equally close, the left one wins.
    """
    start, end = span
    for dist in range(1, window + 1):
        left = start - dist
        if left >= 0 and left in is_highway_term:
            return left
        right = end - 1 + dist
        if right < len(tokens) and right in is_highway_term:
            return right
    return None


def sort_evidence(evidence: Iterable[MatchEvidence]) -> list[MatchEvidence]:
    return sorted(evidence, key=lambda e: (e.span_start, e.span_end, e.phrase))


class HighwayMapper(ABC):
    """Decides which lexicon highways a cleaned tweet relates to.

    A highway is related when one of its direct phrases occurs in the
    tweet, or when one of its indirect phrases occurs with a highway term
    among its neighbors. Direct hits short-circuit the indirect check, so
    a directly related highway only carries direct evidence.
    """

    name: str = "base"

    def __init__(self, lexicon: Lexicon, config: MappingConfig | None = None) -> None:
        self.lexicon = lexicon
        self.config = config or MappingConfig()

    @abstractmethod
    def occurrences(
        self, tokens: Sequence[str]
    ) -> tuple[dict[str, dict[TermClass, list[tuple[Span, str]]]], frozenset[int]]:
        """Phrase occurrences per highway and class, plus highway-term positions."""

    def map_tweet(self, cleaned: CleanedTweet) -> MappingResult:
        tokens = cleaned.tokens
        if not tokens:
            return MappingResult(record_id=cleaned.record_id)
        found, term_positions = self.occurrences(tokens)

        highways: list[str] = []
        evidence: list[MatchEvidence] = []
        for entry in self.lexicon.entries:
            hits = found.get(entry.id, {})
            direct = hits.get(TermClass.DIRECT, [])
            if direct:
                highways.append(entry.id)
                evidence.extend(
                    sort_evidence(
                        MatchEvidence(
                            highway_id=entry.id,
                            term_class=TermClass.DIRECT,
                            phrase=phrase,
                            span_start=start,
                            span_end=end,
                        )
                        for (start, end), phrase in direct
                    )
                )
                continue

            supported: list[MatchEvidence] = []
            for (start, end), phrase in hits.get(TermClass.INDIRECT, []):
                pos = find_neighbor(
                    tokens, (start, end), self.config.adjacency_window, term_positions
                )
                if pos is not None:
                    supported.append(
                        MatchEvidence(
                            highway_id=entry.id,
                            term_class=TermClass.INDIRECT,
                            phrase=phrase,
                            span_start=start,
                            span_end=end,
                            neighbor=tokens[pos],
                        )
                    )
            if supported:
                highways.append(entry.id)
                evidence.extend(sort_evidence(supported))

        return MappingResult(
            record_id=cleaned.record_id, highways=tuple(highways), evidence=tuple(evidence)
        )

    def map_all(self, cleaned: Iterable[CleanedTweet]) -> list[MappingResult]:
        return [self.map_tweet(c) for c in cleaned]

    def map_corpus(self, cleaned: Iterable[CleanedTweet]) -> dict[str, list[str]]:
        return group_by_highway(self.map_all(cleaned), self.lexicon)


def group_by_highway(results: Iterable[MappingResult], lexicon: Lexicon) -> dict[str, list[str]]:
    """Record ids per highway id, in input order; every lexicon id is present."""
    grouped: dict[str, list[str]] = {hid: [] for hid in lexicon.ids}
    for result in results:
        for hid in result.highways:
            grouped[hid].append(result.record_id)
    return grouped

"""Automaton-backed mapper: one pass over the tokens finds every phrase."""

from __future__ import annotations

from collections.abc import Sequence

from hwyimpact.lexicon.matcher import CompiledMatcher, compile_matcher
from hwyimpact.mapping.base import HighwayMapper, Span
from hwyimpact.models import CleanedTweet, Lexicon, MappingConfig, MappingResult, TermClass


class CompiledMapper(HighwayMapper):
    name = "compiled"

    def __init__(self, lexicon: Lexicon, config: MappingConfig | None = None) -> None:
        super().__init__(lexicon, config)
        self.matcher: CompiledMatcher = compile_matcher(lexicon)

    def occurrences(
        self, tokens: Sequence[str]
    ) -> tuple[dict[str, dict[TermClass, list[tuple[Span, str]]]], frozenset[int]]:
        found: dict[str, dict[TermClass, list[tuple[Span, str]]]] = {}
        term_positions: set[int] = set()
        for m in self.matcher.iter_matches(tokens):
            if m.term_class is TermClass.HIGHWAY_TERM:
                term_positions.add(m.start)
            elif m.highway_id is not None:
                by_class = found.setdefault(m.highway_id, {})
                by_class.setdefault(m.term_class, []).append(((m.start, m.end), m.phrase))
        return found, frozenset(term_positions)


def map_tweet(
    cleaned: CleanedTweet, lexicon: Lexicon, config: MappingConfig | None = None
) -> MappingResult:
    """Map a single tweet. Builds the automaton each call; reuse a CompiledMapper for corpora."""
    return CompiledMapper(lexicon, config).map_tweet(cleaned)


def map_corpus(
    cleaned: Sequence[CleanedTweet], lexicon: Lexicon, config: MappingConfig | None = None
) -> dict[str, list[str]]:
    return CompiledMapper(lexicon, config).map_corpus(cleaned)

"""Brute-force reference mapper.

Every phrase is tried at every position and every neighbor candidate is
listed and ranked, one highway at a time. Nothing here is shared with the
automaton-backed mapper, so the two can be checked against each other.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from hwyimpact.models import (
    CleanedTweet,
    HighwayEntry,
    Lexicon,
    MappingConfig,
    MappingResult,
    MatchEvidence,
    TermClass,
)


def naive_scan(tokens: Sequence[str], phrase: Sequence[str]) -> list[tuple[int, int]]:
    n = len(phrase)
    return [
        (i, i + n)
        for i in range(len(tokens) - n + 1)
        if tuple(tokens[i : i + n]) == tuple(phrase)
    ]


def _window_positions(n_tokens: int, start: int, end: int, window: int) -> list[int]:
    """Positions within *window* of the span [start, end), nearest first, left before right."""
    candidates = []
    for pos in range(n_tokens):
        if pos < start:
            dist = start - pos
        elif pos >= end:
            dist = pos - (end - 1)
        else:
            continue
        if dist <= window:
            candidates.append((dist, pos))
    return [pos for _, pos in sorted(candidates)]


def _evidence_key(ev: MatchEvidence) -> tuple[int, int, str]:
    return (ev.span_start, ev.span_end, ev.phrase)


def _map_entry(
    entry: HighwayEntry, tokens: Sequence[str], highway_terms: frozenset[str], window: int
) -> list[MatchEvidence]:
    direct = [
        MatchEvidence(
            highway_id=entry.id,
            term_class=TermClass.DIRECT,
            phrase=phrase.text,
            span_start=start,
            span_end=end,
        )
        for phrase in entry.direct_terms
        for start, end in naive_scan(tokens, phrase.tokens)
    ]
    if direct:
        return sorted(direct, key=_evidence_key)

    indirect = []
    for phrase in entry.indirect_terms:
        for start, end in naive_scan(tokens, phrase.tokens):
            neighbors = [
                tokens[pos]
                for pos in _window_positions(len(tokens), start, end, window)
                if tokens[pos] in highway_terms
            ]
            if neighbors:
                indirect.append(
                    MatchEvidence(
                        highway_id=entry.id,
                        term_class=TermClass.INDIRECT,
                        phrase=phrase.text,
                        span_start=start,
                        span_end=end,
                        neighbor=neighbors[0],
                    )
                )
    return sorted(indirect, key=_evidence_key)


def oracle_map(
    cleaned: CleanedTweet, lexicon: Lexicon, config: MappingConfig | None = None
) -> MappingResult:
    """Map one tweet by brute force, highway by highway in lexicon order."""
    window = (config or MappingConfig()).adjacency_window
    highway_terms = frozenset(lexicon.highway_terms)
    highways: list[str] = []
    evidence: list[MatchEvidence] = []
    for entry in lexicon.entries:
        found = _map_entry(entry, cleaned.tokens, highway_terms, window)
        if found:
            highways.append(entry.id)
            evidence.extend(found)
    return MappingResult(
        record_id=cleaned.record_id, highways=tuple(highways), evidence=tuple(evidence)
    )


class OracleMapper:
    name = "oracle"

    def __init__(self, lexicon: Lexicon, config: MappingConfig | None = None) -> None:
        self.lexicon = lexicon
        self.config = config or MappingConfig()

    def map_tweet(self, cleaned: CleanedTweet) -> MappingResult:
        return oracle_map(cleaned, self.lexicon, self.config)

    def map_all(self, cleaned: Iterable[CleanedTweet]) -> list[MappingResult]:
        return [self.map_tweet(c) for c in cleaned]

    def map_corpus(self, cleaned: Iterable[CleanedTweet]) -> dict[str, list[str]]:
        grouped: dict[str, list[str]] = {entry.id: [] for entry in self.lexicon.entries}
        for result in self.map_all(cleaned):
            for hid in result.highways:
                grouped[hid].append(result.record_id)
        return grouped

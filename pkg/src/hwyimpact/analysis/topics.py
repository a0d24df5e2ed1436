"""Top-k topic terms by document frequency."""

from __future__ import annotations

from collections import Counter
from collections.abc import Collection, Iterable, Mapping, Sequence

from hwyimpact.models import CleanedTweet, Lexicon, TopicRow


def _tokens(tweet: CleanedTweet | Sequence[str]) -> Sequence[str]:
    return tweet.tokens if isinstance(tweet, CleanedTweet) else tweet


def document_frequency(
    tweets: Iterable[CleanedTweet | Sequence[str]], excluded: Collection[str] = ()
) -> Counter[str]:
    """Number of tweets containing each term at least once."""
    df: Counter[str] = Counter()
    skip = frozenset(excluded)
    for tweet in tweets:
        df.update(set(_tokens(tweet)) - skip)
    return df


def top_terms(
    tweets: Iterable[CleanedTweet | Sequence[str]],
    k: int,
    excluded: Collection[str] = (),
    *,
    highway_id: str = "",
    phase_name: str = "",
) -> list[TopicRow]:
    """The *k* most frequent terms, ordered by (doc_freq desc, term asc)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    df = document_frequency(tweets, excluded)
    ranked = sorted(df.items(), key=lambda item: (-item[1], item[0]))[:k]
    return [
        TopicRow(highway_id=highway_id, phase_name=phase_name, rank=i, term=term, doc_freq=n)
        for i, (term, n) in enumerate(ranked, 1)
    ]


def topic_table(
    cells: Mapping[tuple[str, str], Sequence[CleanedTweet]], lexicon: Lexicon, k: int
) -> list[TopicRow]:
    """Top terms per (highway, phase) cell, excluding each highway's own search tokens."""
    rows: list[TopicRow] = []
    for (highway_id, phase_name), tweets in cells.items():
        excluded = lexicon.entry(highway_id).search_tokens
        rows.extend(
            top_terms(tweets, k, excluded, highway_id=highway_id, phase_name=phase_name)
        )
    return rows

"""Six-step text cleaning: URLs, tokens, case, lemmas, symbols, stopwords."""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from importlib import resources
from pathlib import Path

from hwyimpact.cleaning.lemmatizer import lemmatize
from hwyimpact.errors import ConfigError
from hwyimpact.models import CleanedTweet, Lexicon, StopwordList, TweetRecord

_URL_RE = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})

DEFAULT_STOPWORDS = "stopwords.txt"


def strip_urls(text: str) -> str:
    """Remove http(s)://... and www.... runs up to the next whitespace."""
    return _URL_RE.sub("", text)


def tokenize(text: str) -> list[str]:
    return text.split()


def _trim_edges(token: str) -> str:
    start, end = 0, len(token)
    while start < end and not token[start].isalnum():
        start += 1
    while end > start and not token[end - 1].isalnum():
        end -= 1
    return token[start:end]


def normalize_token(token: str) -> str | None:
    """Lowercase and strip non-alphanumeric characters from both ends.

    Inner characters stay, so "i-45", "2000's" and "i-10/i-45" are single
    tokens. Returns None when nothing alphanumeric is left.
    """
    return _trim_edges(token.lower().translate(_APOSTROPHES)) or None


def remove_stopwords(tokens: Iterable[str], stoplist: StopwordList) -> list[str]:
    words = stoplist.words
    return [t for t in tokens if t not in words]


def parse_stopwords(text: str) -> StopwordList:
    """One token per line; '#' starts a comment."""
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return StopwordList(words=frozenset(words))


def load_stopwords(path: Path | None = None) -> StopwordList:
    """Load a stopword file, or the bundled default list when *path* is None."""
    if path is None:
        data = resources.files("hwyimpact.cleaning").joinpath("data").joinpath(DEFAULT_STOPWORDS)
        return parse_stopwords(data.read_text(encoding="utf-8"))
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"{path}: cannot read stopword list: {e.strerror or e}") from e
    try:
        return parse_stopwords(text)
    except ValueError as e:
        raise ConfigError(f"{path}: invalid stopword list: {e}") from e


def clean_tokens(text: str, stoplist: StopwordList) -> list[str]:
    out: list[str] = []
    words = stoplist.words
    for raw in tokenize(strip_urls(text)):
        token = normalize_token(raw)
        if token is None:
            continue
        token = lemmatize(token)
        if token not in words:
            out.append(token)
    return out


def clean_text(record: TweetRecord, stoplist: StopwordList) -> CleanedTweet:
    return CleanedTweet(record_id=record.id, tokens=tuple(clean_tokens(record.text, stoplist)))


def clean_corpus(records: Sequence[TweetRecord], stoplist: StopwordList) -> list[CleanedTweet]:
    return [clean_text(r, stoplist) for r in records]


def is_clean_token(token: str, stoplist: StopwordList) -> bool:
    """True if *token* could appear in a CleanedTweet."""
    return (
        bool(token)
        and token == token.lower()
        and token[0].isalnum()
        and token[-1].isalnum()
        and token not in stoplist.words
        and lemmatize(token) == token
    )


def unreachable_terms(lexicon: Lexicon, stoplist: StopwordList) -> list[tuple[str, str]]:
    """(highway id, phrase) pairs holding a token that cleaning can never produce."""
    found: list[tuple[str, str]] = []
    for entry in lexicon.entries:
        for phrase in (*entry.direct_terms, *entry.indirect_terms):
            if not all(is_clean_token(t, stoplist) for t in phrase.tokens):
                found.append((entry.id, phrase.text))
    for term in lexicon.highway_terms:
        if not is_clean_token(term, stoplist):
            found.append(("*", term))
    return found

"""Rule-based English lemmatizer for microblog tokens.

Suffix rules are applied repeatedly until the token stops changing, so the
result is always a fixed point: lemmatize(lemmatize(t)) == lemmatize(t).
Only purely alphabetic tokens longer than three letters are rewritten;
anything carrying digits or symbols ("i-45", "2000's") passes through.
"""

from __future__ import annotations

from functools import lru_cache

_VOWELS = frozenset("aeiou")
_NO_UNDOUBLE = frozenset("lsz")
# stems that regain a silent e once -ed/-ing is removed
_SILENT_E_ENDINGS = ("bl", "iz", "ag", "rg", "dg", "v", "u")
_SIBILANT_ENDINGS = ("x", "z", "ch", "sh", "ss")
_MIN_STEM = 3

EXCEPTIONS: dict[str, str] = {
    "always": "always",
    "anything": "anything",
    "does": "do",
    "during": "during",
    "evening": "evening",
    "everything": "everything",
    "goes": "go",
    "hundred": "hundred",
    "morning": "morning",
    "movies": "movie",
    "news": "news",
    "nothing": "nothing",
    "ourselves": "ourselves",
    "series": "series",
    "something": "something",
    "species": "species",
    "spring": "spring",
    "string": "string",
    "texas": "texas",
    "themselves": "themselves",
    "yourselves": "yourselves",
}


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel-consonant sequences in *stem*."""
    pattern = "".join("c" if _is_consonant(stem, i) else "v" for i in range(len(stem)))
    return pattern.count("vc")


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3 or stem[-1] in "wxy":
        return False
    return (
        _is_consonant(stem, len(stem) - 3)
        and not _is_consonant(stem, len(stem) - 2)
        and _is_consonant(stem, len(stem) - 1)
    )


def _restore(stem: str) -> str:
    """Undo spelling changes made when -ed/-ing was attached."""
    if len(stem) >= 2 and stem[-1] == stem[-2] and _is_consonant(stem, len(stem) - 1):
        return stem if stem[-1] in _NO_UNDOUBLE else stem[:-1]
    if stem.endswith(_SILENT_E_ENDINGS):
        return stem + "e"
    if stem.endswith("c") and not stem.endswith("ck"):
        return stem + "e"
    if stem.endswith("us") and len(stem) >= 3 and not _is_consonant(stem, len(stem) - 3):
        return stem + "e"
    if _measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"
    return stem


def _step(token: str) -> str:
    if token in EXCEPTIONS:
        return EXCEPTIONS[token]
    if len(token) <= _MIN_STEM or not token.isalpha():
        return token

    if token.endswith(("ies", "ied")) and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith("es"):
        base = token[:-2]
        if len(base) >= _MIN_STEM and (
            base.endswith(_SIBILANT_ENDINGS)
            or (base.endswith("us") and _is_consonant(base, len(base) - 3))
        ):
            return base
        return token[:-1]
    if token.endswith("s"):
        if token.endswith(("ss", "us", "is")):
            return token
        return token[:-1]
    if token.endswith("ing"):
        stem = token[:-3]
        if len(stem) >= _MIN_STEM and _has_vowel(stem):
            return _restore(stem)
        return token
    if token.endswith("ed") and not token.endswith("eed"):
        stem = token[:-2]
        if len(stem) >= _MIN_STEM and _has_vowel(stem):
            return _restore(stem)
        return token
    return token


@lru_cache(maxsize=65536)
def lemmatize(token: str) -> str:
    """Reduce an inflected token to its root form ("closed" -> "close")."""
    current = token
    while True:
        nxt = _step(current)
        if nxt == current:
            return current
        current = nxt

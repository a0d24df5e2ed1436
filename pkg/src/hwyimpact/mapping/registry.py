"""Mapper factory and registry."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import Protocol

from hwyimpact.mapping.compiled import CompiledMapper
from hwyimpact.mapping.oracle import OracleMapper
from hwyimpact.models import CleanedTweet, Lexicon, MappingConfig, MappingResult


class Mapper(Protocol):
    name: str
    lexicon: Lexicon
    config: MappingConfig

    def map_tweet(self, cleaned: CleanedTweet) -> MappingResult: ...

    def map_all(self, cleaned: Iterable[CleanedTweet]) -> list[MappingResult]: ...

    def map_corpus(self, cleaned: Iterable[CleanedTweet]) -> dict[str, list[str]]: ...


_MAPPERS: dict[str, Callable[[Lexicon, MappingConfig | None], Mapper]] = {
    "compiled": CompiledMapper,
    "oracle": OracleMapper,
}

AVAILABLE_MAPPERS = list(_MAPPERS.keys())


def get_mapper(name: str, lexicon: Lexicon, config: MappingConfig | None = None) -> Mapper:
    factory = _MAPPERS.get(name)
    if factory is None:
        raise ValueError(f"Unknown mapper '{name}'. Available: {', '.join(AVAILABLE_MAPPERS)}")
    return factory(lexicon, config)

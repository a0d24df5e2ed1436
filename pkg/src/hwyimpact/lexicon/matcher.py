"""Aho-Corasick automaton over token sequences.

The automaton's alphabet is whole tokens, not characters: the phrase
"beltway 8" is the two-symbol pattern ("beltway", "8"). A pattern therefore
matches only a contiguous run of equal tokens, never part of a token, so
"45" cannot fire inside "645".

Construction follows the classic three phases: insert every phrase into a
goto trie, compute failure links breadth-first, and append each node's
failure-target outputs to its own so that a single left-to-right pass
reports every occurrence, overlapping ones included.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from hwyimpact.models import Lexicon, TermClass


@dataclass(frozen=True)
class TokenMatch:
    """One occurrence of a lexicon phrase: tokens[start:end] == phrase."""

    start: int
    end: int
    phrase: str
    term_class: TermClass
    highway_id: str | None = None


@dataclass
class _Node:
    children: dict[str, _Node] = field(default_factory=dict)
    fail: _Node | None = None
    # (phrase length, phrase text, term class, highway id)
    output: list[tuple[int, str, TermClass, str | None]] = field(default_factory=list)
    depth: int = 0


class CompiledMatcher:
    """Immutable multi-pattern matcher built from a Lexicon.

    Every direct and indirect phrase is tagged with its highway and term
    class; every highway term is a one-token pattern tagged HIGHWAY_TERM.
    """

    def __init__(self, patterns: Sequence[tuple[tuple[str, ...], TermClass, str | None]]) -> None:
        self._root = _Node()
        self._pattern_count = 0
        for tokens, term_class, highway_id in patterns:
            self._insert(tokens, term_class, highway_id)
        self._build()

    @property
    def pattern_count(self) -> int:
        return self._pattern_count

    def _insert(
        self, tokens: tuple[str, ...], term_class: TermClass, highway_id: str | None
    ) -> None:
        if not tokens:
            raise ValueError("cannot insert an empty pattern")
        node = self._root
        for i, tok in enumerate(tokens):
            if tok not in node.children:
                node.children[tok] = _Node(depth=i + 1)
            node = node.children[tok]
        entry = (len(tokens), " ".join(tokens), term_class, highway_id)
        if entry not in node.output:
            node.output.append(entry)
            self._pattern_count += 1

    def _build(self) -> None:
        root = self._root
        root.fail = root
        queue: deque[_Node] = deque()

        for child in root.children.values():
            child.fail = root
            queue.append(child)

        while queue:
            current = queue.popleft()
            for tok, child in current.children.items():
                fallback = current.fail or root
                while fallback is not root and tok not in fallback.children:
                    fallback = fallback.fail or root
                target = fallback.children.get(tok, root)
                child.fail = root if target is child else target
                # failure targets are shallower, so their outputs are already complete
                child.output = child.output + child.fail.output
                queue.append(child)

    def iter_matches(self, tokens: Sequence[str]) -> Iterator[TokenMatch]:
        """Yield every match, ordered by end position."""
        root = self._root
        node = root
        for i, tok in enumerate(tokens):
            while node is not root and tok not in node.children:
                node = node.fail  # type: ignore[assignment]
            node = node.children.get(tok, root)
            for length, phrase, term_class, highway_id in node.output:
                yield TokenMatch(
                    start=i + 1 - length,
                    end=i + 1,
                    phrase=phrase,
                    term_class=term_class,
                    highway_id=highway_id,
                )

    def search(self, tokens: Sequence[str]) -> list[TokenMatch]:
        return list(self.iter_matches(tokens))

    def node_count(self) -> int:
        count = 0
        stack = [self._root]
        while stack:
            node = stack.pop()
            count += 1
            stack.extend(node.children.values())
        return count


def lexicon_patterns(lexicon: Lexicon) -> list[tuple[tuple[str, ...], TermClass, str | None]]:
    """All tagged patterns of a lexicon, in lexicon order."""
    patterns: list[tuple[tuple[str, ...], TermClass, str | None]] = []
    for entry in lexicon.entries:
        for phrase in entry.direct_terms:
            patterns.append((phrase.tokens, TermClass.DIRECT, entry.id))
        for phrase in entry.indirect_terms:
            patterns.append((phrase.tokens, TermClass.INDIRECT, entry.id))
    for term in lexicon.highway_terms:
        patterns.append(((term,), TermClass.HIGHWAY_TERM, None))
    return patterns


def compile_matcher(lexicon: Lexicon) -> CompiledMatcher:
    return CompiledMatcher(lexicon_patterns(lexicon))

"""Tests for lexicon loading, validation and serialization."""

from __future__ import annotations

import json

import pytest

from hwyimpact.errors import (
    CrossHighwayDirectTermCollision,
    DuplicateHighwayId,
    EmptyTermSet,
    InvalidPolyline,
    LexiconParseError,
)
from hwyimpact.lexicon.loader import (
    builtin_harvey_lexicon,
    dump_lexicon,
    load_lexicon,
    parse_lexicon,
    write_lexicon,
)
from hwyimpact.models import TermPhrase


def _doc(*highways, terms=("highway", "freeway")):
    return {"highway_terms": list(terms), "highways": list(highways)}


def _hw(hid, direct, indirect, **extra):
    return {"id": hid, "direct": list(direct), "indirect": list(indirect), **extra}


# ---------------------------------------------------------------------------
# Built-in lexicon
# ---------------------------------------------------------------------------


class TestBuiltinLexicon:
    def test_highways_in_order(self, harvey):
        assert harvey.ids == ["I-45", "I-10", "I-69", "I-610", "SHT"]

    def test_i610_indirect_has_directional_variants(self, harvey):
        indirect = {p.text for p in harvey.entry("I-610").indirect_terms}
        assert {"610", "610 west", "610 w", "610 s"} <= indirect

    def test_sht_terms(self, harvey):
        sht = harvey.entry("SHT")
        assert [p.text for p in sht.direct_terms] == ["beltway 8", "beltway8", "belt8"]
        assert [p.text for p in sht.indirect_terms] == ["sam houston"]

    def test_highway_terms_include_abbreviations(self, harvey):
        assert {"fwy", "lp", "hwy", "tlwy", "pwy"} <= harvey.highway_term_set
        assert len(harvey.highway_terms) == 10

    def test_every_entry_has_a_polyline(self, harvey):
        assert all(e.polyline and len(e.polyline) >= 2 for e in harvey.entries)

    def test_direct_terms_are_disjoint(self, harvey):
        seen: dict[TermPhrase, str] = {}
        for entry in harvey.entries:
            for phrase in entry.direct_terms:
                assert seen.setdefault(phrase, entry.id) == entry.id

    def test_cached(self):
        assert builtin_harvey_lexicon() is builtin_harvey_lexicon()


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


class TestParseLexicon:
    def test_phrases_lowercased(self):
        lex = parse_lexicon(_doc(_hw("I-45", ["I-45"], ["45 North"])))
        entry = lex.entry("I-45")
        assert entry.direct_terms[0].text == "i-45"
        assert entry.indirect_terms[0].tokens == ("45", "north")

    def test_name_defaults_to_id(self):
        lex = parse_lexicon(_doc(_hw("X", ["x1"], ["x"])))
        assert lex.entry("X").display_name == "X"

    def test_duplicate_phrase_within_highway_collapses(self):
        lex = parse_lexicon(_doc(_hw("X", ["x1", "X1"], ["x"])))
        assert len(lex.entry("X").direct_terms) == 1

    def test_cross_highway_collision(self):
        doc = _doc(_hw("A", ["shared"], ["a"]), _hw("B", ["Shared"], ["b"]))
        with pytest.raises(CrossHighwayDirectTermCollision) as exc:
            parse_lexicon(doc)
        assert exc.value.highways == ("A", "B")
        assert exc.value.phrase == "shared"

    def test_indirect_terms_may_be_shared(self):
        lex = parse_lexicon(_doc(_hw("A", ["a1"], ["north"]), _hw("B", ["b1"], ["north"])))
        assert lex.ids == ["A", "B"]

    def test_duplicate_highway_id(self):
        with pytest.raises(DuplicateHighwayId):
            parse_lexicon(_doc(_hw("A", ["a1"], ["a"]), _hw("A", ["a2"], ["b"])))

    @pytest.mark.parametrize("key", ["direct", "indirect"])
    def test_empty_term_set(self, key):
        hw = _hw("A", ["a1"], ["a"])
        hw[key] = []
        with pytest.raises(EmptyTermSet) as exc:
            parse_lexicon(_doc(hw))
        assert exc.value.term_class == key

    def test_blank_term(self):
        with pytest.raises(LexiconParseError):
            parse_lexicon(_doc(_hw("A", ["  "], ["a"])))

    def test_multi_token_highway_term(self):
        with pytest.raises(LexiconParseError):
            parse_lexicon(_doc(_hw("A", ["a1"], ["a"]), terms=("toll road",)))

    def test_missing_highways(self):
        with pytest.raises(LexiconParseError):
            parse_lexicon({"highway_terms": ["hwy"]})

    @pytest.mark.parametrize(
        "polyline",
        [[[29.7, -95.3]], [[29.7, -95.3], [29.8]], [[29.7, -95.3], [95.0, -95.3]], "x"],
    )
    def test_invalid_polyline(self, polyline):
        with pytest.raises(InvalidPolyline):
            parse_lexicon(_doc(_hw("A", ["a1"], ["a"], polyline=polyline)))


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


class TestLexiconFiles:
    def test_dump_then_parse_is_identity(self, harvey):
        assert parse_lexicon(dump_lexicon(harvey)) == harvey

    def test_write_then_load(self, harvey, tmp_path):
        path = tmp_path / "lex.json"
        write_lexicon(path, harvey)
        assert load_lexicon(path) == harvey
        assert path.read_text().endswith("}\n")

    def test_invalid_json_names_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\n  nope\n}")
        with pytest.raises(LexiconParseError, match=r"bad\.json:2"):
            load_lexicon(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(LexiconParseError, match="cannot read lexicon"):
            load_lexicon(tmp_path / "absent.json")

    def test_polyline_optional(self, tmp_path):
        path = tmp_path / "lex.json"
        path.write_text(json.dumps(_doc(_hw("A", ["a1"], ["a"]))))
        assert load_lexicon(path).entry("A").polyline is None

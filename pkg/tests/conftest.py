from __future__ import annotations

from pathlib import Path

import pytest

from hwyimpact.cleaning.pipeline import load_stopwords
from hwyimpact.lexicon.loader import builtin_harvey_lexicon
from hwyimpact.models import Lexicon, StopwordList

FIXTURES_DIR = Path(__file__).parent / "fixtures"
GOLDEN_DIR = FIXTURES_DIR / "golden"
SAMPLE_CORPUS = FIXTURES_DIR / "sample" / "corpus.jsonl"


@pytest.fixture(scope="session")
def harvey() -> Lexicon:
    return builtin_harvey_lexicon()


@pytest.fixture(scope="session")
def stoplist() -> StopwordList:
    return load_stopwords()


@pytest.fixture()
def golden_corpus() -> Path:
    return GOLDEN_DIR / "corpus.jsonl"


@pytest.fixture()
def sample_corpus() -> Path:
    return SAMPLE_CORPUS


@pytest.fixture()
def isolated_env(tmp_path, monkeypatch):
    """Keep ~/.hwyimpact, a local .env and HWYIMPACT_* variables out of the run."""
    import hwyimpact.config

    monkeypatch.setattr(hwyimpact.config, "HWYIMPACT_CONFIG_DIR", tmp_path / ".hwyimpact")
    monkeypatch.setattr(
        hwyimpact.config, "HWYIMPACT_CONFIG_FILE", tmp_path / ".hwyimpact" / "config"
    )
    for var in ("OUTPUT_DIR", "UTC_OFFSET", "TOP_K", "ADJACENCY_WINDOW",
                "CORRIDOR_THRESHOLD_M", "LOG_LEVEL"):
        monkeypatch.delenv(f"HWYIMPACT_{var}", raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path

"""Pytest configuration and fixtures for Kannada NERC tests."""

from pathlib import Path

import pytest

from kannada_nerc.corpus import Corpus, TagEntry, TagSet, default_tagset, emit_tagged
from kannada_nerc.synthetic import bijective_corpus

# Tagged news sentence in the corpus format, verbatim.
NEWS_TAGGED_SEQUENCE = (
    "ವಾಹಿಂಗ್ಸ್/NEL (ಪಿಟಿಒ)/NONE ಮುಂಬರುವ/NONE ಲೋಕಸಭಾ/NE ಚುನಾವಣೆ/NE ಬಳಿಕ/NONE ನರೇಂದ್ರ/NEPB "
    "ಮೋದಿಯೊಂದಿಗೆ/NEPE ಅಮೆರಿಕ/NEL ರಾಜತಾಂತ್ರಿಕ/NONE ಕೆಲಸ/NONE ನಿರ್ವಹಿಸಲು/NONE ಸಿದ್ಧವಿದ್ದು/NONE "
    "ಇಲ್ಲಿ/NONE ವೀಣಾ/NONE ಪ್ರಶ್ನೆಯೇ/NONE ಇಲ್ಲ/NONE ಎಂದು/NONE ಅಮೆರಿಕ/NEL ಸ್ಪಷ್ಟಪಡಿಸಿದೆ./NONE"
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch) -> None:
    """Remove NERC_* settings so a developer's environment or .env cannot leak into tests."""
    for key in ["NERC_ALPHA", "NERC_FOLDS", "NERC_REPORT_FORMAT", "NERC_WORKERS", "NERC_LOG_LEVEL"]:
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def tagset() -> TagSet:
    """Provide the packaged 23-tag tag set."""
    return default_tagset()


@pytest.fixture
def loc_per_tagset() -> TagSet:
    """Provide a two-tag set: LOC=0, PER=1."""
    return TagSet([TagEntry("LOC", 0, "location"), TagEntry("PER", 1, "person")])


@pytest.fixture
def paris_john_corpus() -> Corpus:
    """Provide the hand-worked three-token corpus (paris->LOC twice, john->PER)."""
    return Corpus.from_pairs([("paris", 0), ("paris", 0), ("john", 1)])


@pytest.fixture
def news_sequence() -> str:
    """Provide a tagged Kannada news sentence."""
    return NEWS_TAGGED_SEQUENCE


@pytest.fixture
def synthetic_corpus(tagset) -> Corpus:
    """Provide a 1,000-token corpus with one token type per tag."""
    return bijective_corpus(1000, tagset)


@pytest.fixture
def synthetic_corpus_file(tmp_path, synthetic_corpus, tagset) -> Path:
    """Write the synthetic corpus to a temporary word/TAG file."""
    path = tmp_path / "synthetic.txt"
    path.write_text(emit_tagged(synthetic_corpus, tagset) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def news_corpus_file(tmp_path, news_sequence) -> Path:
    """Write the tagged news sentence to a temporary file."""
    path = tmp_path / "news.txt"
    path.write_text(news_sequence + "\n", encoding="utf-8")
    return path

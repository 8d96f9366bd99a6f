"""Unit tests for tagged corpus parsing, emission and splitting."""

import unicodedata
from fractions import Fraction

import pytest

from kannada_nerc.corpus import (
    Corpus,
    CorpusParseError,
    TaggedToken,
    emit_tagged,
    fold_sizes,
    k_folds,
    normalize_surface,
    parse_tagged_text,
    read_corpus,
    split_dev_test,
    tokenize_lines,
)


def _numbered(n: int) -> Corpus:
    return Corpus.from_pairs((f"w{i}", i % 23) for i in range(n))


class TestParseTaggedText:
    """Test parse_tagged_text()."""

    def test_single_pair(self, tagset):
        corpus = parse_tagged_text("ಅಮೆರಿಕ/NEL ಬಳಿಕ/NONE", tagset)
        assert [(t.surface, t.label) for t in corpus] == [("ಅಮೆರಿಕ", 1), ("ಬಳಿಕ", 22)]

    def test_multi_word_person(self, tagset):
        corpus = parse_tagged_text("ನರೇಂದ್ರ/NEPB ಮೋದಿಯೊಂದಿಗೆ/NEPE", tagset)
        assert corpus.labels == [13, 15]

    def test_empty_text(self, tagset):
        assert len(parse_tagged_text("", tagset)) == 0

    def test_whitespace_only(self, tagset):
        assert len(parse_tagged_text(" \n\t 　\n", tagset)) == 0

    def test_news_sequence_verbatim(self, tagset, news_sequence):
        corpus = parse_tagged_text(news_sequence, tagset)
        assert len(corpus) == 20
        assert corpus[0] == TaggedToken(normalize_surface("ವಾಹಿಂಗ್ಸ್"), 1)
        assert corpus[1] == TaggedToken("(ಪಿಟಿಒ)", 22)
        assert corpus[-1] == TaggedToken(normalize_surface("ಸ್ಪಷ್ಟಪಡಿಸಿದೆ."), 22)
        assert corpus.labels.count(tagset.tag_to_label("NEL")) == 3

    def test_splits_at_last_slash(self, tagset):
        corpus = parse_tagged_text("km/h/NEM", tagset)
        assert corpus[0] == TaggedToken("km/h", 8)

    def test_newlines_anywhere(self, tagset):
        corpus = parse_tagged_text("a/NEP\n\nb/NEL   c/NEO\r\n", tagset)
        assert corpus.surfaces == ["a", "b", "c"]

    def test_nfc_normalization(self, tagset):
        decomposed = "\u0c95\u0cc6\u0cd5"  # KA, E sign, length mark
        corpus = parse_tagged_text(f"{decomposed}/NONE", tagset)
        assert corpus[0].surface == unicodedata.normalize("NFC", decomposed)
        assert corpus[0].surface == "\u0c95\u0cc7"

    def test_missing_slash(self, tagset):
        with pytest.raises(CorpusParseError) as exc_info:
            parse_tagged_text("a/NEP broken c/NEL", tagset)
        assert exc_info.value.index == 1
        assert exc_info.value.token == "broken"

    def test_unknown_mnemonic_is_named(self, tagset):
        with pytest.raises(CorpusParseError, match="NEX"):
            parse_tagged_text("a/NEX", tagset)

    def test_empty_surface(self, tagset):
        with pytest.raises(CorpusParseError, match="empty surface"):
            parse_tagged_text("a/NEP /NEL", tagset)

    def test_error_carries_line(self, tagset):
        with pytest.raises(CorpusParseError) as exc_info:
            parse_tagged_text("a/NEP\nb/NEP\nc", tagset)
        assert exc_info.value.line == 3
        assert exc_info.value.index == 2
        assert "line 3" in str(exc_info.value)


class TestEmitTagged:
    """Test emit_tagged() and its round trip with the parser."""

    def test_emit(self, tagset):
        corpus = Corpus.from_pairs([("ಅಮೆರಿಕ", 1), ("ಬಳಿಕ", 22)])
        assert emit_tagged(corpus, tagset) == "ಅಮೆರಿಕ/NEL ಬಳಿಕ/NONE"

    def test_round_trip(self, tagset, news_sequence):
        corpus = parse_tagged_text(news_sequence, tagset)
        assert parse_tagged_text(emit_tagged(corpus, tagset), tagset) == corpus

    def test_round_trip_with_slash_surfaces(self, tagset):
        corpus = Corpus.from_pairs([("a/b", 0), ("//", 22), ("x/NEL", 9)])
        assert parse_tagged_text(emit_tagged(corpus, tagset), tagset) == corpus


class TestReadCorpus:
    """Test read_corpus()."""

    def test_reads_file(self, tagset, news_corpus_file):
        assert len(read_corpus(news_corpus_file, tagset)) == 20

    def test_error_names_file(self, tagset, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("a/NEP b\n", encoding="utf-8")
        with pytest.raises(CorpusParseError, match="bad.txt:1"):
            read_corpus(path, tagset)

    def test_missing_file(self, tagset, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_corpus(tmp_path / "absent.txt", tagset)


class TestTaggedToken:
    """Test TaggedToken invariants."""

    def test_empty_surface_rejected(self):
        with pytest.raises(ValueError):
            TaggedToken("", 0)

    def test_whitespace_rejected(self):
        with pytest.raises(ValueError):
            TaggedToken("a b", 0)

    def test_surface_normalized_to_nfc(self):
        token = TaggedToken("\u0c95\u0cc6\u0cd5", 0)
        assert token.surface == "\u0c95\u0cc7"

    def test_from_pairs_survives_emit_then_parse(self, tagset):
        corpus = Corpus.from_pairs([("\u0c95\u0cc6\u0cd5", 0), ("\u0cb0\u0cbe\u0cae", 22)])
        assert parse_tagged_text(emit_tagged(corpus, tagset), tagset) == corpus


class TestTokenizeLines:
    """Test tokenize_lines()."""

    def test_keeps_line_structure(self):
        assert tokenize_lines("a b\n\nc") == [["a", "b"], [], ["c"]]

    def test_keeps_punctuation(self):
        assert tokenize_lines("ವಾಹಿಂಗ್ಸ್ (ಪಿಟಿಒ): ಮುಂಬರುವ") == [["ವಾಹಿಂಗ್ಸ್", "(ಪಿಟಿಒ):", "ಮುಂಬರುವ"]]

    def test_empty(self):
        assert tokenize_lines("") == []


class TestSplitDevTest:
    """Test split_dev_test()."""

    def test_full_corpus_dimensions(self):
        corpus = _numbered(100_170)
        dev, test = split_dev_test(corpus, Fraction(5000, 100_170))
        assert (len(dev), len(test)) == (95_170, 5_000)

    def test_even_split_preserves_order(self):
        corpus = _numbered(10)
        dev, test = split_dev_test(corpus, 0.5)
        assert dev.surfaces == [f"w{i}" for i in range(5)]
        assert test.surfaces == [f"w{i}" for i in range(5, 10)]

    def test_floor_semantics(self):
        dev, test = split_dev_test(_numbered(1), 0.5)
        assert (len(dev), len(test)) == (1, 0)

    def test_decimal_fraction_is_exact(self):
        dev, test = split_dev_test(_numbered(10), 0.3)
        assert len(test) == 3

    @pytest.mark.parametrize("fraction", [0, 1, -0.5, 1.5])
    def test_fraction_out_of_range(self, fraction):
        with pytest.raises(ValueError):
            split_dev_test(_numbered(10), fraction)

    def test_empty_corpus(self):
        with pytest.raises(ValueError):
            split_dev_test(Corpus(), 0.5)

    @pytest.mark.parametrize("n,fraction", [(7, 0.2), (100, 0.33), (9517, 0.1)])
    def test_exact_partition(self, n, fraction):
        corpus = _numbered(n)
        dev, test = split_dev_test(corpus, fraction)
        assert len(dev) + len(test) == n
        assert dev + test == corpus


class TestKFolds:
    """Test k_folds() and fold_sizes()."""

    def test_full_corpus_fold_size(self):
        folds = k_folds(_numbered(95_170), 10)
        assert [len(devtest) for _, devtest in folds] == [9517] * 10

    def test_exact_division(self):
        assert fold_sizes(10, 5) == [2, 2, 2, 2, 2]

    def test_remainder_goes_first(self):
        assert fold_sizes(7, 3) == [3, 2, 2]

    def test_train_is_the_rest_in_order(self):
        corpus = _numbered(7)
        folds = k_folds(corpus, 3)
        train, devtest = folds[1]
        assert devtest.surfaces == ["w3", "w4"]
        assert train.surfaces == ["w0", "w1", "w2", "w5", "w6"]

    @pytest.mark.parametrize("k", [2, 3, 10])
    @pytest.mark.parametrize("n", [7, 100, 9517])
    def test_partition_properties(self, n, k):
        corpus = _numbered(n)
        folds = k_folds(corpus, k)
        sizes = [len(devtest) for _, devtest in folds]
        assert max(sizes) - min(sizes) <= 1
        assert sum(sizes) == n
        joined = Corpus()
        for train, devtest in folds:
            joined = joined + devtest
            assert len(train) + len(devtest) == n
        assert joined == corpus

    @pytest.mark.parametrize("k", [1, 0, 11])
    def test_bad_k(self, k):
        with pytest.raises(ValueError):
            k_folds(_numbered(10), k)

    def test_shuffled_folds_are_disjoint_and_deterministic(self):
        corpus = _numbered(50)
        first = k_folds(corpus, 5, shuffle_seed=7)
        second = k_folds(corpus, 5, shuffle_seed=7)
        assert first == second
        seen = [surface for _, devtest in first for surface in devtest.surfaces]
        assert sorted(seen) == sorted(corpus.surfaces)
        assert [devtest for _, devtest in first] != [devtest for _, devtest in k_folds(corpus, 5)]

    def test_shuffled_train_keeps_original_order(self):
        corpus = _numbered(20)
        for train, _ in k_folds(corpus, 4, shuffle_seed=1):
            positions = [int(surface[1:]) for surface in train.surfaces]
            assert positions == sorted(positions)

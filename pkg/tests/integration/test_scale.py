"""Scale checks at the dimensions of a full 95,170-token training corpus."""

import time
import tracemalloc

import pytest

from kannada_nerc.corpus import Corpus, fold_sizes, k_folds, split_dev_test
from kannada_nerc.evaluation import evaluate
from kannada_nerc.pipeline import RunTiming, render_timing, train_tagger
from kannada_nerc.synthetic import zipf_corpus

TRAIN_TOKENS = 95_170
TRAIN_TYPES = 33_269
TEST_TOKENS = 5_000


@pytest.mark.slow
class TestTrainingScale:
    """Train on a synthetic corpus with the full vocabulary size."""

    def test_time_and_memory(self, tagset):
        corpus = zipf_corpus(TRAIN_TOKENS + TEST_TOKENS, TRAIN_TYPES, tagset, seed=2014)
        dev, test = split_dev_test(corpus, f"{TEST_TOKENS}/{TRAIN_TOKENS + TEST_TOKENS}")
        assert (len(dev), len(test)) == (TRAIN_TOKENS, TEST_TOKENS)

        tracemalloc.start()
        try:
            t0 = time.perf_counter()
            tagger, timing = train_tagger(dev, tagset)
            elapsed = time.perf_counter() - t0
            evaluation = evaluate(tagger, test)
            _, peak = tracemalloc.get_traced_memory()
        finally:
            tracemalloc.stop()

        assert elapsed < 60
        assert peak < 1024**3
        assert timing.n_features == tagger.vectorizer.n_features <= TRAIN_TYPES
        assert evaluation.report.total_support == TEST_TOKENS

        summary = render_timing(
            RunTiming(
                train_tokens=timing.train_tokens,
                n_features=timing.n_features,
                test_tokens=len(test),
                fit_seconds=timing.fit_seconds,
                transform_seconds=evaluation.transform_seconds,
            )
        )
        assert ": 95,170 words" in summary.splitlines()[0]
        assert ": 5,000 words" in summary.splitlines()[4]


class TestFoldScale:
    """Fold partition at full development-set size."""

    def test_ten_folds_of_9517(self):
        assert fold_sizes(TRAIN_TOKENS, 10) == [9_517] * 10

    @pytest.mark.slow
    def test_ten_folds_cover_the_corpus_once(self, tagset):
        dev = Corpus.from_pairs((f"w{i}", i % len(tagset)) for i in range(TRAIN_TOKENS))
        seen: set[str] = set()
        for train, devtest in k_folds(dev, 10):
            assert len(devtest) == 9_517
            assert len(train) == TRAIN_TOKENS - 9_517
            assert seen.isdisjoint(devtest.surfaces)
            seen.update(devtest.surfaces)
        assert len(seen) == TRAIN_TOKENS

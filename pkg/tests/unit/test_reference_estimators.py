"""Cross-checks of the vectorizer and classifier against scikit-learn."""

import numpy as np
import pytest

from kannada_nerc import classifier
from kannada_nerc.synthetic import zipf_corpus
from kannada_nerc.vectorizer import fit_transform, transform

text_features = pytest.importorskip("sklearn.feature_extraction.text")
naive_bayes = pytest.importorskip("sklearn.naive_bayes")


@pytest.fixture
def corpus(tagset):
    """Zipf-distributed corpus of 2,000 tokens over 300 types."""
    return zipf_corpus(2_000, 300, tagset, seed=5)


class TestTfidfVectorizer:
    """Compare with TfidfVectorizer(smooth_idf=True, norm="l2")."""

    def test_vocabulary_idf_and_rows(self, corpus):
        fitted, X = fit_transform(corpus.surfaces)
        reference = text_features.TfidfVectorizer(analyzer=str.split, smooth_idf=True, norm="l2")
        expected = reference.fit_transform(corpus.surfaces)

        assert list(reference.get_feature_names_out()) == list(fitted.vocab.terms)
        assert np.allclose(fitted.idf, reference.idf_, rtol=0, atol=1e-12)
        assert abs(X.matrix - expected).max() <= 1e-12


class TestMultinomialNB:
    """Compare with MultinomialNB on the classes present in training."""

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_parameters_and_predictions(self, corpus, alpha):
        dev, test = corpus[:1_500], corpus[1_500:]
        fitted, X = fit_transform(dev.surfaces)
        model = classifier.fit(X, dev.labels, alpha=alpha, n_classes=23)
        reference = naive_bayes.MultinomialNB(alpha=alpha).fit(X.matrix, dev.labels)

        present = reference.classes_
        assert np.allclose(model.log_prior[present], reference.class_log_prior_, rtol=0, atol=1e-12)
        assert np.allclose(model.log_likelihood[present], reference.feature_log_prob_, rtol=0, atol=1e-12)

        X_test = transform(test.surfaces, fitted)
        assert classifier.predict_labels(model, X_test).tolist() == reference.predict(X_test.matrix).tolist()

"""End-to-end tagger: tf-idf vectorizer plus Multinomial Naive Bayes classifier.

SPDX-License-Identifier: MIT
"""

import logging
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import classifier, vectorizer
from .classifier import NbModel
from .corpus import TAG_SEPARATOR, Corpus, TagSet, tokenize_lines
from .vectorizer import FittedVectorizer, TfIdfMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunTiming:
    """Corpus sizes and wall-clock times of a run."""

    train_tokens: int
    n_features: int
    test_tokens: int = 0
    fit_seconds: float = 0.0
    transform_seconds: float = 0.0

    def __post_init__(self) -> None:
        for name in ("train_tokens", "n_features", "test_tokens", "fit_seconds", "transform_seconds"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class Tagger:
    """A trained tagger: tag set, frozen vectorizer and fitted model."""

    tagset: TagSet
    vectorizer: FittedVectorizer
    model: NbModel

    def __post_init__(self) -> None:
        if self.model.n_features != self.vectorizer.n_features:
            raise ValueError("model and vectorizer disagree on the number of features")
        if self.model.n_classes != len(self.tagset):
            raise ValueError("model and tag set disagree on the number of classes")

    @property
    def alpha(self) -> float:
        return self.model.alpha

    def transform(self, surfaces: Sequence[str]) -> TfIdfMatrix:
        return self.vectorizer.transform(surfaces)

    def predict(self, surfaces: Sequence[str]) -> np.ndarray:
        """Label of every surface token."""
        return classifier.predict_labels(self.model, self.transform(surfaces))


def train_tagger(corpus: Corpus, tagset: TagSet, alpha: float = 1.0) -> tuple[Tagger, RunTiming]:
    """Fit vectorizer and classifier on a tagged corpus.

    The timing brackets feature extraction plus classifier training only.

    Raises:
        FitError: If the corpus is empty or a label is outside the tag set
        ValueError: If alpha is not positive
    """
    surfaces = corpus.surfaces
    labels = corpus.labels

    t0 = time.perf_counter()
    fitted, X_train = vectorizer.fit_transform(surfaces)
    model = classifier.fit(X_train, labels, alpha=alpha, n_classes=len(tagset))
    fit_seconds = time.perf_counter() - t0

    unsupported = [tagset.label_to_tag(j) for j, n in enumerate(model.class_count) if n == 0]
    if unsupported:
        logger.warning(f"Tags without training support: {', '.join(unsupported)}")
    logger.info(f"Trained on {len(corpus)} tokens, {fitted.n_features} features in {fit_seconds:.3f} sec")

    timing = RunTiming(train_tokens=len(corpus), n_features=fitted.n_features, fit_seconds=fit_seconds)
    return Tagger(tagset=tagset, vectorizer=fitted, model=model), timing


def tag_text(tagger: Tagger, text: str, with_scores: bool = False) -> str:
    """Tag untagged text as ``surface/MNEMONIC`` tokens, keeping its line structure.

    With ``with_scores`` each token gets a ``|p`` suffix holding the posterior
    probability of its tag.
    """
    lines = tokenize_lines(text)
    surfaces = [surface for line in lines for surface in line]
    X = tagger.transform(surfaces)
    if with_scores:
        scores = classifier.batch_log_scores(tagger.model, X) if surfaces else np.zeros((0, tagger.model.n_classes))
        labels = np.argmax(scores, axis=1)
        confidence = np.exp(classifier.log_posterior(scores)[np.arange(len(labels)), labels])
    else:
        labels = classifier.predict_labels(tagger.model, X)

    out_lines: list[str] = []
    position = 0
    for line in lines:
        words = []
        for surface in line:
            word = f"{surface}{TAG_SEPARATOR}{tagger.tagset.label_to_tag(int(labels[position]))}"
            if with_scores:
                word = f"{word}|{confidence[position]:.4f}"
            words.append(word)
            position += 1
        out_lines.append(" ".join(words))

    tagged = "\n".join(out_lines)
    if text.endswith(("\n", "\r")) and out_lines:
        tagged += "\n"
    return tagged


def _thousands(n: int) -> str:
    return f"{n:,}"


def render_timing(timing: RunTiming) -> str:
    """Corpus size and run time summary, one ``label : value`` line each."""
    rows = [
        ("The training set size for the Model", f"{_thousands(timing.train_tokens)} words"),
        ("Total number of samples treated by the classifier", f"{_thousands(timing.train_tokens)} words"),
        ("Total number of features extracted by the classifier", f"{_thousands(timing.n_features)} (vocabulary words)"),
        ("Feature extraction Time (Training of MNB model)", f"{timing.fit_seconds:.3f} sec"),
    ]
    if timing.test_tokens:
        rows.append(("The test set size for the Model", f"{_thousands(timing.test_tokens)} words"))
        rows.append(("Feature extraction Time for test data", f"{timing.transform_seconds:.3f} sec"))
    width = max(len(label) for label, _ in rows)
    return "\n".join(f"{label.ljust(width)} : {value}" for label, value in rows)

"""Multinomial Naive Bayes over tf-idf rows.

Class priors and smoothed per-class feature likelihoods are estimated from
(fractional) feature weights; decoding takes the argmax of
``log P(y) + sum_i x_i * log P(x_i | y)``, computed in log space.

SPDX-License-Identifier: MIT
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from .config import N_CLASSES
from .vectorizer import FitError, SparseVector, TfIdfMatrix

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class NbModel:
    """Fitted class log priors and class x feature log likelihoods."""

    n_classes: int
    n_features: int
    log_prior: np.ndarray
    log_likelihood: np.ndarray
    alpha: float
    class_count: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        log_prior = _frozen(self.log_prior)
        log_likelihood = _frozen(self.log_likelihood)
        if log_prior.shape != (self.n_classes,):
            raise ValueError(f"log_prior has shape {log_prior.shape}, expected ({self.n_classes},)")
        if log_likelihood.shape != (self.n_classes, self.n_features):
            raise ValueError(
                f"log_likelihood has shape {log_likelihood.shape}, expected ({self.n_classes}, {self.n_features})"
            )
        object.__setattr__(self, "log_prior", log_prior)
        object.__setattr__(self, "log_likelihood", log_likelihood)


@dataclass(frozen=True)
class Prediction:
    """Decoded label plus the unnormalized log score of every class."""

    label: int
    log_scores: np.ndarray


def fit(X: TfIdfMatrix, y: Sequence[int], alpha: float = 1.0, n_classes: int = N_CLASSES) -> NbModel:
    """Estimate priors and additively smoothed likelihoods.

    Classes without training rows get a log prior of -inf and uniform likelihoods.

    Raises:
        ValueError: If alpha is not positive
        FitError: If X is empty, its row count differs from len(y), or a label is out of range
    """
    if not alpha > 0:
        raise ValueError(f"smoothing alpha must be positive, got {alpha}")
    labels = np.asarray(y, dtype=np.int64)
    if X.n_rows == 0 or labels.size == 0:
        raise FitError("cannot fit a classifier on zero rows")
    if X.n_rows != labels.size:
        raise FitError(f"matrix has {X.n_rows} rows but {labels.size} labels were given")
    if X.dimension == 0:
        raise FitError("cannot fit a classifier on zero features")
    if labels.min() < 0 or labels.max() >= n_classes:
        bad = int(labels[(labels < 0) | (labels >= n_classes)][0])
        raise FitError(f"label {bad} out of range 0..{n_classes - 1}")

    n_features = X.dimension
    csr = X.matrix
    row_of_entry = np.repeat(np.arange(X.n_rows), np.diff(csr.indptr))

    # np.add.at accumulates in entry order: rows ascending, then features ascending
    feature_count = np.zeros((n_classes, n_features), dtype=np.float64)
    np.add.at(feature_count, (labels[row_of_entry], csr.indices), csr.data)

    class_count = np.bincount(labels, minlength=n_classes)
    with np.errstate(divide="ignore"):
        log_prior = np.log(class_count / labels.size)

    class_total = feature_count.sum(axis=1) + alpha * n_features
    log_likelihood = np.log(feature_count + alpha) - np.log(class_total)[:, np.newaxis]

    empty = class_count == 0
    if empty.any():
        log_likelihood[empty] = -np.log(n_features)
        logger.debug(f"{int(empty.sum())} classes have no training rows")

    return NbModel(
        n_classes=n_classes,
        n_features=n_features,
        log_prior=log_prior,
        log_likelihood=log_likelihood,
        alpha=float(alpha),
        class_count=tuple(int(c) for c in class_count),
    )


def _check_dimension(model: NbModel, dimension: int) -> None:
    if dimension != model.n_features:
        raise ValueError(f"feature dimension {dimension} does not match the model's {model.n_features}")


def predict_log_scores(model: NbModel, x: SparseVector) -> np.ndarray:
    """Unnormalized log posterior per class: log_prior[j] + sum_i x_i * log_likelihood[j, i]."""
    _check_dimension(model, x.dimension)
    columns = list(x.columns)
    weights = np.asarray(x.weights, dtype=np.float64)
    return model.log_prior + model.log_likelihood[:, columns] @ weights


def predict(model: NbModel, x: SparseVector) -> Prediction:
    """Argmax decoding; ties go to the lowest label."""
    scores = predict_log_scores(model, x)
    return Prediction(label=int(np.argmax(scores)), log_scores=scores)


def batch_log_scores(model: NbModel, X: TfIdfMatrix) -> np.ndarray:
    """Log scores for every row of X, shape (rows, classes)."""
    _check_dimension(model, X.dimension)
    return np.asarray(X.matrix @ model.log_likelihood.T) + model.log_prior


def predict_labels(model: NbModel, X: TfIdfMatrix) -> np.ndarray:
    """Argmax labels for every row of X."""
    if X.n_rows == 0:
        _check_dimension(model, X.dimension)
        return np.zeros(0, dtype=np.int64)
    return np.argmax(batch_log_scores(model, X), axis=1)


def predict_batch(model: NbModel, X: TfIdfMatrix) -> list[Prediction]:
    """predict() applied to every row, in row order."""
    if X.n_rows == 0:
        _check_dimension(model, X.dimension)
        return []
    scores = batch_log_scores(model, X)
    return [Prediction(label=int(np.argmax(row)), log_scores=row) for row in scores]


def log_posterior(log_scores: np.ndarray) -> np.ndarray:
    """Normalize log scores by the evidence term so that exp() sums to 1."""
    scores = np.asarray(log_scores, dtype=np.float64)
    return scores - logsumexp(scores, axis=-1, keepdims=True)

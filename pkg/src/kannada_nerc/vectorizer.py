"""tf-idf feature extraction for Kannada NERC.

A document is a token string; under the tagging pipeline every document is a
single word, so term frequencies are one-hot and document frequency equals
corpus frequency. Vocabulary and idf weights are frozen at fit time.

SPDX-License-Identifier: MIT
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

logger = logging.getLogger(__name__)


class FitError(ValueError):
    """Training data cannot produce a model."""


def _terms(doc: str) -> list[str]:
    return doc.split()


@dataclass(frozen=True)
class Vocabulary:
    """Sorted distinct terms and their column positions."""

    terms: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.terms, self.terms[1:])):
            raise ValueError("vocabulary terms must be sorted and distinct")
        object.__setattr__(self, "index", MappingProxyType({term: i for i, term in enumerate(self.terms)}))

    @classmethod
    def from_documents(cls, docs: Iterable[str]) -> "Vocabulary":
        return cls(tuple(sorted({term for doc in docs for term in _terms(doc)})))

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: object) -> bool:
        return term in self.index

    def column(self, term: str) -> int:
        return self.index[term]


@dataclass(frozen=True)
class SparseVector:
    """Row of a sparse matrix: strictly increasing columns with nonzero weights."""

    columns: tuple[int, ...]
    weights: tuple[float, ...]
    dimension: int

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.weights):
            raise ValueError("columns and weights must have the same length")
        if any(a >= b for a, b in zip(self.columns, self.columns[1:])):
            raise ValueError("columns must be strictly increasing")
        if self.columns and (self.columns[0] < 0 or self.columns[-1] >= self.dimension):
            raise ValueError(f"column out of range for dimension {self.dimension}")
        if any(w == 0 for w in self.weights):
            raise ValueError("stored weights must be nonzero")

    @classmethod
    def zero(cls, dimension: int) -> "SparseVector":
        return cls((), (), dimension)

    @classmethod
    def from_mapping(cls, entries: Mapping[int, float], dimension: int) -> "SparseVector":
        columns = sorted(c for c, w in entries.items() if w != 0)
        return cls(tuple(columns), tuple(float(entries[c]) for c in columns), dimension)

    @property
    def is_zero(self) -> bool:
        return not self.columns

    def norm(self) -> float:
        # w * w would overflow or underflow at the extremes; hypot rescales
        return math.hypot(*self.weights)

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.columns, self.weights))

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dimension, dtype=np.float64)
        dense[list(self.columns)] = self.weights
        return dense


@dataclass(frozen=True)
class TfIdfMatrix:
    """Row-normalized tf-idf matrix held as CSR."""

    matrix: sp.csr_matrix

    @classmethod
    def from_rows(cls, rows: Sequence[SparseVector], dimension: int) -> "TfIdfMatrix":
        indptr = np.zeros(len(rows) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(row.columns) for row in rows])
        indices = np.fromiter((c for row in rows for c in row.columns), dtype=np.int64, count=int(indptr[-1]))
        data = np.fromiter((w for row in rows for w in row.weights), dtype=np.float64, count=int(indptr[-1]))
        return cls(sp.csr_matrix((data, indices, indptr), shape=(len(rows), dimension)))

    @property
    def n_rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[1])

    def row(self, i: int) -> SparseVector:
        start, end = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        return SparseVector(
            tuple(int(c) for c in self.matrix.indices[start:end]),
            tuple(float(w) for w in self.matrix.data[start:end]),
            self.dimension,
        )

    @property
    def rows(self) -> list[SparseVector]:
        return [self.row(i) for i in range(self.n_rows)]

    def row_norms(self) -> np.ndarray:
        return np.sqrt(np.asarray(self.matrix.multiply(self.matrix).sum(axis=1)).ravel())


@dataclass(frozen=True)
class FittedVectorizer:
    """Frozen vocabulary plus per-term idf weights."""

    vocab: Vocabulary
    idf: np.ndarray
    n_docs: int

    def __post_init__(self) -> None:
        idf = np.array(self.idf, dtype=np.float64)
        if idf.shape != (len(self.vocab),):
            raise ValueError(f"idf has shape {idf.shape}, expected ({len(self.vocab)},)")
        idf.setflags(write=False)
        object.__setattr__(self, "idf", idf)

    @property
    def n_features(self) -> int:
        return len(self.vocab)

    def transform(self, docs: Sequence[str]) -> TfIdfMatrix:
        return transform(docs, self)


def term_frequency(doc: str, vocab: Vocabulary) -> SparseVector:
    """Raw counts of vocabulary terms in a document; out-of-vocabulary terms are ignored."""
    counts = Counter(term for term in _terms(doc) if term in vocab)
    return SparseVector.from_mapping({vocab.column(t): float(n) for t, n in counts.items()}, len(vocab))


def compute_idf(docs: Sequence[str], vocab: Vocabulary) -> np.ndarray:
    """Smoothed inverse document frequency: ln((|D| + 1) / (1 + df)) + 1.

    Raises:
        ValueError: If docs is empty or a vocabulary term occurs in no document
    """
    if not docs:
        raise ValueError("cannot compute idf over zero documents")
    df = np.zeros(len(vocab), dtype=np.float64)
    doc_freq = Counter(term for doc in docs for term in set(_terms(doc)))
    for term, n in doc_freq.items():
        if term in vocab:
            df[vocab.column(term)] = n
    if len(vocab) and df.min() < 1:
        missing = vocab.terms[int(np.argmin(df))]
        raise ValueError(f"vocabulary term {missing!r} does not occur in the documents")
    return np.log((len(docs) + 1) / (1 + df)) + 1


def fit(docs: Sequence[str]) -> FittedVectorizer:
    """Build the sorted vocabulary and idf weights from training documents.

    Raises:
        FitError: If docs is empty or contains no terms
    """
    if not docs:
        raise FitError("cannot fit a vectorizer on zero documents")
    vocab = Vocabulary.from_documents(docs)
    if not len(vocab):
        raise FitError("training documents contain no terms")
    fitted = FittedVectorizer(vocab=vocab, idf=compute_idf(docs, vocab), n_docs=len(docs))
    logger.debug(f"Fitted vectorizer: {len(vocab)} terms over {len(docs)} documents")
    return fitted


def l2_normalize(v: SparseVector) -> SparseVector:
    """Divide every weight by the Euclidean norm; the zero vector is returned unchanged."""
    norm = v.norm()
    if norm == 0:
        return v
    return SparseVector(v.columns, tuple(w / norm for w in v.weights), v.dimension)


def transform(docs: Sequence[str], fv: FittedVectorizer) -> TfIdfMatrix:
    """Row i is the L2-normalized tf * idf vector of docs[i] under the frozen vocabulary.

    Documents without an in-vocabulary term become zero rows.
    """
    index = fv.vocab.index
    indptr = np.zeros(len(docs) + 1, dtype=np.int64)
    indices: list[int] = []
    counts: list[float] = []
    for i, doc in enumerate(docs):
        tf = Counter(index[t] for t in _terms(doc) if t in index)
        for column in sorted(tf):
            indices.append(column)
            counts.append(float(tf[column]))
        indptr[i + 1] = len(indices)

    columns = np.asarray(indices, dtype=np.int64)
    data = np.asarray(counts, dtype=np.float64) * fv.idf[columns]
    row_lengths = np.diff(indptr)
    row_ids = np.repeat(np.arange(len(docs)), row_lengths)
    norms = np.sqrt(np.bincount(row_ids, weights=data * data, minlength=len(docs)))
    if data.size:
        data = data / norms[row_ids]

    matrix = sp.csr_matrix((data, columns, indptr), shape=(len(docs), fv.n_features))
    return TfIdfMatrix(matrix)


def fit_transform(docs: Sequence[str]) -> tuple[FittedVectorizer, TfIdfMatrix]:
    """Fit on docs and transform them with the result."""
    fv = fit(docs)
    return fv, transform(docs, fv)


def oov_rate(docs: Sequence[str], fv: FittedVectorizer) -> float:
    """Fraction of documents without any in-vocabulary term."""
    if not docs:
        return 0.0
    missing = sum(1 for doc in docs if not any(term in fv.vocab for term in _terms(doc)))
    return missing / len(docs)

"""Versioned JSON model files for trained taggers.

Floats are written with ``repr`` (shortest exact decimal, at most 17
significant digits) so that loading reproduces every weight bit for bit.
A log prior of -inf is stored as null, and each class's log likelihood row
is stored as a default value plus the columns that differ from it.

SPDX-License-Identifier: MIT
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .classifier import NbModel
from .config import MODEL_FORMAT_VERSION
from .corpus import TagEntry, TagSet
from .pipeline import Tagger
from .vectorizer import FittedVectorizer, Vocabulary

logger = logging.getLogger(__name__)


class ModelFormatError(ValueError):
    """A model file is unreadable, malformed, or of an unsupported version."""


def _float_or_none(value: float) -> Optional[float]:
    return None if math.isinf(value) and value < 0 else float(value)


def _sparse_row(row: np.ndarray) -> dict[str, Any]:
    # zero-count features share the row minimum
    default = float(row.min())
    columns = np.flatnonzero(row != default)
    return {
        "default": default,
        "columns": [int(c) for c in columns],
        "values": [float(v) for v in row[columns]],
    }


def to_document(tagger: Tagger) -> dict[str, Any]:
    """Plain JSON-ready dictionary describing a tagger."""
    model = tagger.model
    fitted = tagger.vectorizer
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "alpha": model.alpha,
        "tagset": [
            {
                "tag": entry.mnemonic,
                "label": entry.label,
                "meaning": entry.description,
                "category": entry.category,
                "example": entry.example,
            }
            for entry in tagger.tagset
        ],
        "n_docs": fitted.n_docs,
        "vocabulary": list(fitted.vocab.terms),
        "idf": [float(v) for v in fitted.idf],
        "class_count": list(model.class_count),
        "log_prior": [_float_or_none(v) for v in model.log_prior],
        "log_likelihood": [_sparse_row(row) for row in model.log_likelihood],
    }


def _dense_row(stored: dict[str, Any], n_features: int) -> np.ndarray:
    row = np.full(n_features, float(stored["default"]), dtype=np.float64)
    columns = np.asarray(stored["columns"], dtype=np.int64)
    if columns.size and (columns.min() < 0 or columns.max() >= n_features):
        raise ModelFormatError("log likelihood column out of range")
    row[columns] = np.asarray(stored["values"], dtype=np.float64)
    return row


def from_document(document: dict[str, Any]) -> Tagger:
    """Rebuild a tagger from a dictionary produced by to_document.

    Raises:
        ModelFormatError: On a version mismatch or malformed content
    """
    version = document.get("format_version") if isinstance(document, dict) else None
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version!r} (expected {MODEL_FORMAT_VERSION})")
    try:
        tagset = TagSet(
            TagEntry(
                mnemonic=row["tag"],
                label=int(row["label"]),
                description=row.get("meaning", ""),
                category=row.get("category", ""),
                example=row.get("example", ""),
            )
            for row in document["tagset"]
        )
        vocab = Vocabulary(tuple(document["vocabulary"]))
        idf = np.asarray(document["idf"], dtype=np.float64)
        fitted = FittedVectorizer(vocab=vocab, idf=idf, n_docs=int(document["n_docs"]))
        n_classes = len(tagset)
        log_prior = np.array([-np.inf if v is None else float(v) for v in document["log_prior"]], dtype=np.float64)
        rows = document["log_likelihood"]
        if len(rows) != n_classes:
            raise ModelFormatError(f"log likelihood has {len(rows)} rows, expected {n_classes}")
        model = NbModel(
            n_classes=n_classes,
            n_features=len(vocab),
            log_prior=log_prior,
            log_likelihood=np.vstack([_dense_row(row, len(vocab)) for row in rows]),
            alpha=float(document["alpha"]),
            class_count=tuple(int(c) for c in document.get("class_count", ())),
        )
        return Tagger(tagset=tagset, vectorizer=fitted, model=model)
    except ModelFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"malformed model document: {e}") from e


def save_model(tagger: Tagger, path: Path | str) -> None:
    """Write a tagger to a UTF-8 JSON model file."""
    model_path = Path(path)
    text = json.dumps(to_document(tagger), ensure_ascii=False, indent=1, allow_nan=False)
    model_path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote model with {tagger.vectorizer.n_features} features to {model_path}")


def load_model(path: Path | str) -> Tagger:
    """Read a tagger from a JSON model file.

    Raises:
        OSError: If the file cannot be read
        ModelFormatError: If the content is not a supported model
    """
    model_path = Path(path)
    try:
        document = json.loads(model_path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ModelFormatError(f"{model_path}: not a JSON model file: {e}") from e
    try:
        tagger = from_document(document)
    except ModelFormatError as e:
        raise ModelFormatError(f"{model_path}: {e}") from e
    logger.info(f"Loaded model with {tagger.vectorizer.n_features} features from {model_path}")
    return tagger

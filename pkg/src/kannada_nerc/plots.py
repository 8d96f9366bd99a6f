"""Report charts for Kannada NERC.

SPDX-License-Identifier: MIT
"""

import io
import logging

import matplotlib
import matplotlib.pyplot as plt
import numpy as np

from .corpus import TagSet
from .evaluation import ClassificationReport, CrossValidation

matplotlib.use("Agg")

logger = logging.getLogger(__name__)

_METRIC_STYLES = (
    ("Precision", "precision", "o"),
    ("Recall", "recall", "s"),
    ("F1 - score", "f1", "^"),
)


def _to_png(fig: plt.Figure) -> bytes:
    buffer = io.BytesIO()
    fig.savefig(buffer, format="png", bbox_inches="tight")
    plt.close(fig)
    buffer.seek(0)
    return buffer.getvalue()


def render_report_chart(report: ClassificationReport, tagset: TagSet, title: str = "MNB results") -> bytes:
    """Render grouped per-tag precision/recall/F1 bars and return the raw PNG bytes."""
    entries = list(tagset)
    positions = np.arange(len(entries))
    width = 0.27

    fig, ax = plt.subplots(figsize=(12, 5))
    for offset, (label, attribute, _) in enumerate(_METRIC_STYLES):
        values = getattr(report, attribute)[[entry.label for entry in entries]]
        ax.bar(positions + (offset - 1) * width, values, width=width, label=label)

    ax.set_title(title)
    ax.set_xticks(positions)
    ax.set_xticklabels([entry.mnemonic for entry in entries], rotation=45, ha="right")
    ax.set_ylabel("Score")
    ax.set_ylim(0, 1.05)
    ax.legend()
    logger.debug(f"Rendering report chart for {len(entries)} tags")
    return _to_png(fig)


def render_folds_chart(result: CrossValidation, title: str = "Cross-validation") -> bytes:
    """Render weighted precision/recall/F1 per fold and return the raw PNG bytes."""
    folds = [fold.fold_index for fold in result.folds]

    fig, ax = plt.subplots(figsize=(10, 6))
    for label, attribute, marker in _METRIC_STYLES:
        values = [getattr(fold.report, f"weighted_{attribute}") for fold in result.folds]
        ax.plot(folds, values, label=label, marker=marker, markersize=4)

    ax.set_title(title)
    ax.set_xlabel("Fold")
    ax.set_ylabel("Score")
    ax.set_xticks(folds)
    ax.set_ylim(0, 1.05)
    ax.legend()
    return _to_png(fig)

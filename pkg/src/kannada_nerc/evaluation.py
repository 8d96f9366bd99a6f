"""Per-token evaluation and k-fold cross-validation for Kannada NERC.

Precision, recall and F1 per class with support, support-weighted and macro
averages, accuracy, and the fold-by-fold cross-validation driver. Metrics
with a zero denominator are 0.

SPDX-License-Identifier: MIT
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .corpus import Corpus, TagSet, k_folds
from .pipeline import Tagger, train_tagger
from .vectorizer import oov_rate

logger = logging.getLogger(__name__)

AVERAGE_ROW_LABEL = "Average / Total"


class CrossValidationError(RuntimeError):
    """A cross-validation fold failed; ``fold_index`` is 1-based."""

    def __init__(self, fold_index: int, message: str):
        self.fold_index = fold_index
        super().__init__(f"fold {fold_index}: {message}")


def _int_array(values: Sequence[int] | np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=np.int64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class ClassCounts:
    """Per-class true positives, false positives, false negatives and support."""

    tp: np.ndarray
    fp: np.ndarray
    fn: np.ndarray
    support: np.ndarray

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "support"):
            object.__setattr__(self, name, _int_array(getattr(self, name)))

    @classmethod
    def zeros(cls, n_classes: int) -> "ClassCounts":
        empty = np.zeros(n_classes, dtype=np.int64)
        return cls(empty, empty, empty, empty)

    @property
    def n_classes(self) -> int:
        return int(self.tp.size)

    @property
    def total(self) -> int:
        """Number of scored predictions."""
        return int(self.tp.sum() + self.fp.sum())

    def __add__(self, other: "ClassCounts") -> "ClassCounts":
        return ClassCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.support + other.support)


@dataclass(frozen=True)
class ClassificationReport:
    """Per-class metrics plus weighted and macro averages and accuracy."""

    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float
    total_support: int

    @property
    def n_classes(self) -> int:
        return int(self.support.size)


@dataclass(frozen=True)
class FoldResult:
    """Scores of one cross-validation fold; fold_index is 1-based."""

    fold_index: int
    report: ClassificationReport
    support: int
    counts: ClassCounts
    n_features: int = 0
    fit_seconds: float = 0.0
    test_seconds: float = 0.0


class CrossValidation(NamedTuple):
    folds: list[FoldResult]
    aggregate: ClassificationReport


@dataclass(frozen=True)
class Evaluation:
    """Outcome of scoring a tagger on a gold corpus."""

    report: ClassificationReport
    counts: ClassCounts
    predicted: np.ndarray
    transform_seconds: float


def count(predicted: Sequence[int], gold: Sequence[int], n_classes: int) -> ClassCounts:
    """Tally tp/fp/fn/support per class.

    Raises:
        ValueError: On length mismatch or labels outside 0..n_classes-1
    """
    pred = np.asarray(predicted, dtype=np.int64)
    true = np.asarray(gold, dtype=np.int64)
    if pred.shape != true.shape:
        raise ValueError(f"predicted has {pred.size} labels but gold has {true.size}")
    for name, labels in (("predicted", pred), ("gold", true)):
        if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
            raise ValueError(f"{name} labels must lie in 0..{n_classes - 1}")

    hit = pred == true
    tp = np.bincount(true[hit], minlength=n_classes)
    fp = np.bincount(pred[~hit], minlength=n_classes)
    fn = np.bincount(true[~hit], minlength=n_classes)
    support = np.bincount(true, minlength=n_classes)
    return ClassCounts(tp, fp, fn, support)


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    out = np.zeros(numerator.shape, dtype=np.float64)
    np.divide(numerator, denominator, out=out, where=denominator > 0)
    return out


def _weighted(metric: np.ndarray, support: np.ndarray) -> float:
    total = int(support.sum())
    return float(np.dot(support, metric) / total) if total else 0.0


def report(counts: ClassCounts) -> ClassificationReport:
    """Precision, recall, F1 per class; support-weighted and macro averages; accuracy."""
    precision = _ratio(counts.tp, counts.tp + counts.fp)
    recall = _ratio(counts.tp, counts.tp + counts.fn)
    # equals 2PR / (P + R) whenever tp > 0, and P + R = 0 exactly when tp = 0
    f1 = _ratio(2 * counts.tp, 2 * counts.tp + counts.fp + counts.fn)
    total = counts.total
    return ClassificationReport(
        precision=precision,
        recall=recall,
        f1=f1,
        support=counts.support,
        weighted_precision=_weighted(precision, counts.support),
        weighted_recall=_weighted(recall, counts.support),
        weighted_f1=_weighted(f1, counts.support),
        macro_precision=float(precision.mean()) if precision.size else 0.0,
        macro_recall=float(recall.mean()) if recall.size else 0.0,
        macro_f1=float(f1.mean()) if f1.size else 0.0,
        accuracy=float(counts.tp.sum() / total) if total else 0.0,
        total_support=int(counts.support.sum()),
    )


def evaluate(tagger: Tagger, corpus: Corpus) -> Evaluation:
    """Predict every token of a gold corpus with a trained tagger and score it."""
    surfaces = corpus.surfaces
    t0 = time.perf_counter()
    predicted = tagger.predict(surfaces)
    transform_seconds = time.perf_counter() - t0

    rate = oov_rate(surfaces, tagger.vectorizer)
    if rate > 0.5:
        logger.warning(f"{rate:.0%} of evaluated tokens are out of vocabulary")
    counts = count(predicted, corpus.labels, len(tagger.tagset))
    return Evaluation(report(counts), counts, predicted, transform_seconds)


def _run_fold(fold_index: int, train: Corpus, devtest: Corpus, tagset: TagSet, alpha: float) -> FoldResult:
    logger.info(f"Fold {fold_index}: training on {len(train)} tokens, testing on {len(devtest)}")
    try:
        tagger, timing = train_tagger(train, tagset, alpha)
        evaluation = evaluate(tagger, devtest)
    except (ValueError, LookupError) as e:
        logger.error(f"Fold {fold_index} failed: {e}")
        raise CrossValidationError(fold_index, str(e)) from e
    logger.debug(f"Fold {fold_index}: fit {timing.fit_seconds:.3f} sec, test {evaluation.transform_seconds:.3f} sec")
    return FoldResult(
        fold_index=fold_index,
        report=evaluation.report,
        support=len(devtest),
        counts=evaluation.counts,
        n_features=timing.n_features,
        fit_seconds=timing.fit_seconds,
        test_seconds=evaluation.transform_seconds,
    )


def cross_validate(
    dev: Corpus,
    k: int,
    alpha: float,
    tagset: TagSet,
    shuffle_seed: Optional[int] = None,
    workers: int = 1,
) -> CrossValidation:
    """Train and score on each of k folds; the aggregate pools raw counts over all folds.

    Raises:
        ValueError: If k < 2 or k exceeds the number of tokens
        CrossValidationError: If fitting or scoring a fold fails
    """
    folds = k_folds(dev, k, shuffle_seed=shuffle_seed)
    jobs = [(i + 1, train, devtest, tagset, alpha) for i, (train, devtest) in enumerate(folds)]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _run_fold(*job), jobs))
    else:
        results = [_run_fold(*job) for job in jobs]

    pooled = ClassCounts.zeros(len(tagset))
    for result in results:
        pooled = pooled + result.counts
    aggregate = report(pooled)
    logger.info(
        f"Cross-validation over {k} folds: P={aggregate.weighted_precision:.3f} "
        f"R={aggregate.weighted_recall:.3f} F1={aggregate.weighted_f1:.3f}"
    )
    return CrossValidation(results, aggregate)


def _fixed(value: float) -> str:
    return f"{value:.2f}"


def _render_table(header: Sequence[str], rows: Sequence[Sequence[str]], fmt: str, numeric_from: int) -> str:
    if fmt == "tsv":
        return "\n".join("\t".join(row) for row in [header, *rows])
    if fmt != "text":
        raise ValueError(f"unknown report format: {fmt!r}")
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]

    def line(row: Sequence[str]) -> str:
        cells = [
            cell.rjust(widths[i]) if i >= numeric_from else cell.ljust(widths[i]) for i, cell in enumerate(row)
        ]
        return "  ".join(cells).rstrip()

    return "\n".join(line(row) for row in [header, *rows])


def render_report(report: ClassificationReport, tagset: TagSet, fmt: str = "text") -> str:
    """Per-tag table in tag set order closing with the weighted ``Average / Total`` row."""
    if report.n_classes != len(tagset):
        raise ValueError(f"report has {report.n_classes} classes but the tag set has {len(tagset)}")
    header = ["Named Entity (NE)", "Tag", "Tag label", "Precision", "Recall", "F1 - score", "Support"]
    rows: list[list[str]] = []
    previous_category = None
    for entry in tagset:
        j = entry.label
        show_category = fmt == "tsv" or entry.category != previous_category
        rows.append(
            [
                entry.category if show_category else "",
                entry.mnemonic,
                str(j),
                _fixed(report.precision[j]),
                _fixed(report.recall[j]),
                _fixed(report.f1[j]),
                str(int(report.support[j])),
            ]
        )
        previous_category = entry.category
    rows.append(
        [
            AVERAGE_ROW_LABEL,
            "",
            "",
            _fixed(report.weighted_precision),
            _fixed(report.weighted_recall),
            _fixed(report.weighted_f1),
            str(report.total_support),
        ]
    )
    if fmt == "tsv":
        rows.append(
            [
                "Macro average",
                "",
                "",
                _fixed(report.macro_precision),
                _fixed(report.macro_recall),
                _fixed(report.macro_f1),
                str(report.total_support),
            ]
        )
    return _render_table(header, rows, fmt, numeric_from=3)


def render_summary(report: ClassificationReport) -> str:
    """Accuracy and macro averages on one line."""
    return (
        f"Accuracy: {report.accuracy:.4f}  "
        f"Macro P/R/F1: {report.macro_precision:.2f}/{report.macro_recall:.2f}/{report.macro_f1:.2f}"
    )


def _percent(value: float) -> str:
    return f"{value * 100:.1f}%"


def render_folds(result: CrossValidation, fmt: str = "text") -> str:
    """One row per fold (weighted P/R/F1 and support) plus the pooled ``Average / Total`` row."""
    header = ["FOLDS", "Precision", "Recall", "F1 - score", "Support"]
    rows = [
        [
            str(fold.fold_index),
            _fixed(fold.report.weighted_precision),
            _fixed(fold.report.weighted_recall),
            _fixed(fold.report.weighted_f1),
            str(fold.support),
        ]
        for fold in result.folds
    ]
    aggregate = result.aggregate
    rows.append(
        [
            AVERAGE_ROW_LABEL,
            _percent(aggregate.weighted_precision),
            _percent(aggregate.weighted_recall),
            _percent(aggregate.weighted_f1),
            str(aggregate.total_support),
        ]
    )
    return _render_table(header, rows, fmt, numeric_from=1)

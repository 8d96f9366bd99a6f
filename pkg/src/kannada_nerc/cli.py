"""Command-line interface for Kannada NERC.

Subcommands: train, tag, eval, crossval, split, tagset.

SPDX-License-Identifier: MIT
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

# Load environment variables from .env file first
load_dotenv()

from . import __version__  # noqa: E402
from .config import (  # noqa: E402
    REPORT_FORMATS,
    get_log_level,
    log_settings,
    resolve_alpha,
    resolve_folds,
    resolve_report_format,
    resolve_workers,
)
from .corpus import (  # noqa: E402
    Corpus,
    CorpusParseError,
    TagLookupError,
    default_tagset,
    emit_tagged,
    read_corpus,
    split_dev_test,
)
from .evaluation import (  # noqa: E402
    ClassificationReport,
    CrossValidation,
    CrossValidationError,
    cross_validate,
    evaluate,
    render_folds,
    render_report,
    render_summary,
)
from .persistence import ModelFormatError, load_model, save_model  # noqa: E402
from .pipeline import RunTiming, render_timing, tag_text, train_tagger  # noqa: E402
from .vectorizer import FitError  # noqa: E402

logger = logging.getLogger(__name__)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_plot(path: Path, png: bytes) -> None:
    path.write_bytes(png)
    logger.info(f"Wrote chart to {path}")


def cmd_train(
    corpus_path: Path | str,
    model_path: Path | str,
    alpha: Optional[float] = None,
    report_format: Optional[str] = None,
) -> RunTiming:
    """Train on a tagged corpus, write the model file and print the run summary."""
    resolved_alpha = resolve_alpha(alpha)
    fmt = resolve_report_format(report_format)
    log_settings(resolved_alpha, report_format=fmt)

    tagset = default_tagset()
    corpus = read_corpus(corpus_path, tagset)
    tagger, timing = train_tagger(corpus, tagset, resolved_alpha)
    save_model(tagger, model_path)
    _emit(_render_timing(timing, fmt))
    return timing


def cmd_tag(
    model_path: Path | str,
    input_path: Path | str,
    output_path: Optional[Path | str] = None,
    with_scores: bool = False,
) -> None:
    """Tag an untagged UTF-8 text file, writing ``word/TAG`` lines to a file or stdout."""
    tagger = load_model(model_path)
    text = Path(input_path).read_text(encoding="utf-8")
    tagged = tag_text(tagger, text, with_scores=with_scores)
    if output_path is None:
        sys.stdout.write(tagged)
    else:
        Path(output_path).write_text(tagged, encoding="utf-8")
        logger.info(f"Wrote tagged text to {output_path}")


def cmd_eval(
    model_path: Path | str,
    test_path: Path | str,
    report_format: Optional[str] = None,
    tagged_output: Optional[Path | str] = None,
    plot_path: Optional[Path | str] = None,
) -> ClassificationReport:
    """Score a model on a tagged test corpus and print the per-tag report and run summary."""
    fmt = resolve_report_format(report_format)
    tagger = load_model(model_path)
    test = read_corpus(test_path, tagger.tagset)
    evaluation = evaluate(tagger, test)

    if tagged_output is not None:
        predicted = Corpus.from_pairs(zip(test.surfaces, (int(label) for label in evaluation.predicted)))
        Path(tagged_output).write_text(emit_tagged(predicted, tagger.tagset) + "\n", encoding="utf-8")
        logger.info(f"Wrote predicted tagged sequence to {tagged_output}")

    _emit(render_report(evaluation.report, tagger.tagset, fmt))
    if fmt == "text":
        _emit(render_summary(evaluation.report))
    timing = RunTiming(
        train_tokens=tagger.vectorizer.n_docs,
        n_features=tagger.vectorizer.n_features,
        test_tokens=len(test),
        transform_seconds=evaluation.transform_seconds,
    )
    _emit(_render_timing(timing, fmt))

    if plot_path is not None:
        from .plots import render_report_chart

        _write_plot(Path(plot_path), render_report_chart(evaluation.report, tagger.tagset))
    return evaluation.report


def cmd_crossval(
    corpus_path: Path | str,
    k: Optional[int] = None,
    alpha: Optional[float] = None,
    report_format: Optional[str] = None,
    shuffle_seed: Optional[int] = None,
    workers: Optional[int] = None,
    plot_path: Optional[Path | str] = None,
) -> CrossValidation:
    """Run k-fold cross-validation over a development corpus and print the per-fold table."""
    folds = resolve_folds(k)
    resolved_alpha = resolve_alpha(alpha)
    fmt = resolve_report_format(report_format)
    log_settings(resolved_alpha, folds=folds, report_format=fmt)

    tagset = default_tagset()
    dev = read_corpus(corpus_path, tagset)
    result = cross_validate(
        dev, folds, resolved_alpha, tagset, shuffle_seed=shuffle_seed, workers=resolve_workers(workers)
    )
    _emit(render_folds(result, fmt))
    if fmt == "text":
        _emit(render_summary(result.aggregate))

    if plot_path is not None:
        from .plots import render_folds_chart

        _write_plot(Path(plot_path), render_folds_chart(result))
    return result


def cmd_split(
    corpus_path: Path | str,
    test_fraction: str,
    dev_path: Path | str,
    test_path: Path | str,
) -> tuple[int, int]:
    """Write the contiguous development/test split of a tagged corpus."""
    tagset = default_tagset()
    corpus = read_corpus(corpus_path, tagset)
    dev, test = split_dev_test(corpus, Fraction(test_fraction))
    Path(dev_path).write_text(emit_tagged(dev, tagset) + "\n", encoding="utf-8")
    Path(test_path).write_text(emit_tagged(test, tagset) + "\n", encoding="utf-8")
    logger.info(f"Split {len(corpus)} tokens into {len(dev)} development and {len(test)} test tokens")
    return len(dev), len(test)


def cmd_tagset(report_format: Optional[str] = None) -> None:
    """Print the tag set table."""
    fmt = resolve_report_format(report_format)
    separator = "\t" if fmt == "tsv" else " | "
    lines = [separator.join(["NE", "Tag", "Tag-label", "Meaning", "Example"])]
    for entry in default_tagset():
        row = [entry.category, entry.mnemonic, str(entry.label), entry.description, entry.example]
        lines.append(separator.join(row))
    _emit("\n".join(lines))


def _render_timing(timing: RunTiming, fmt: str) -> str:
    if fmt == "tsv":
        fields = ("train_tokens", "n_features", "test_tokens", "fit_seconds", "transform_seconds")
        return "\n".join(f"{name}\t{getattr(timing, name)}" for name in fields)
    return render_timing(timing)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the ``nerc`` command."""
    parser = argparse.ArgumentParser(prog="nerc", description="Kannada Named Entity Recognition and Classification")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    report = argparse.ArgumentParser(add_help=False)
    report.add_argument("--report-format", choices=REPORT_FORMATS, default=None, help="text (default) or tsv")

    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", parents=[report], help="train a model on a tagged corpus")
    train.add_argument("--corpus", required=True, type=Path, help="tagged word/TAG corpus (UTF-8)")
    train.add_argument("--model", required=True, type=Path, help="model file to write")
    train.add_argument("--alpha", type=float, default=None, help="additive smoothing (default: NERC_ALPHA or 1.0)")

    tag = commands.add_parser("tag", help="tag untagged text with a trained model")
    tag.add_argument("--model", required=True, type=Path)
    tag.add_argument("--input", required=True, type=Path, help="untagged UTF-8 text")
    tag.add_argument("--output", type=Path, default=None, help="output file (default: stdout)")
    tag.add_argument("--scores", action="store_true", help="append the posterior probability of each tag")

    evaluate_cmd = commands.add_parser("eval", parents=[report], help="score a model on a tagged test corpus")
    evaluate_cmd.add_argument("--model", required=True, type=Path)
    evaluate_cmd.add_argument("--test", required=True, type=Path, help="tagged word/TAG test corpus")
    evaluate_cmd.add_argument("--tagged-output", type=Path, default=None, help="write the predicted tagged sequence")
    evaluate_cmd.add_argument("--plot", type=Path, default=None, help="write a PNG chart of per-tag scores")

    crossval = commands.add_parser("crossval", parents=[report], help="k-fold cross-validation on a corpus")
    crossval.add_argument("--corpus", required=True, type=Path)
    crossval.add_argument("--folds", type=int, default=None, help="number of folds (default: NERC_FOLDS or 10)")
    crossval.add_argument("--alpha", type=float, default=None)
    crossval.add_argument("--shuffle-seed", type=int, default=None, help="permute tokens before folding")
    crossval.add_argument("--workers", type=int, default=None, help="threads for folds (default: NERC_WORKERS or 1)")
    crossval.add_argument("--plot", type=Path, default=None, help="write a PNG chart of per-fold scores")

    split = commands.add_parser("split", help="split a tagged corpus into development and test sets")
    split.add_argument("--corpus", required=True, type=Path)
    split.add_argument("--test-fraction", required=True, help="fraction in (0, 1), e.g. 0.05 or 5000/100170")
    split.add_argument("--dev-out", required=True, type=Path)
    split.add_argument("--test-out", required=True, type=Path)

    commands.add_parser("tagset", parents=[report], help="print the Named Entity tag set")
    return parser


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "train":
        cmd_train(args.corpus, args.model, args.alpha, args.report_format)
    elif args.command == "tag":
        cmd_tag(args.model, args.input, args.output, with_scores=args.scores)
    elif args.command == "eval":
        cmd_eval(args.model, args.test, args.report_format, args.tagged_output, args.plot)
    elif args.command == "crossval":
        cmd_crossval(
            args.corpus, args.folds, args.alpha, args.report_format, args.shuffle_seed, args.workers, args.plot
        )
    elif args.command == "split":
        cmd_split(args.corpus, args.test_fraction, args.dev_out, args.test_out)
    elif args.command == "tagset":
        cmd_tagset(args.report_format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the ``nerc`` command and return its exit status."""
    args = build_parser().parse_args(argv)
    try:
        logging.getLogger().setLevel(get_log_level())
        _dispatch(args)
    except CorpusParseError as e:
        logger.error(f"Parse error: {e}")
        return 1
    except ModelFormatError as e:
        logger.error(f"Model error: {e}")
        return 1
    except CrossValidationError as e:
        logger.error(f"Cross-validation error: {e}")
        return 1
    except FitError as e:
        logger.error(f"Training error: {e}")
        return 1
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return 1
    except (ValueError, TagLookupError) as e:
        logger.error(f"Error: {e}")
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

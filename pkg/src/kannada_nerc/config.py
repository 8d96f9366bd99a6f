"""Configuration module for Kannada NERC.

This module handles configuration loading, validation, and constants
for the tagger, its evaluation harness and the command-line interface.

SPDX-License-Identifier: MIT
"""

import logging
import os
from typing import Optional

DEFAULT_LOG_LEVEL = "INFO"


def get_log_level() -> str:
    """Get the logging level name from environment."""
    value = os.getenv("NERC_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper() or DEFAULT_LOG_LEVEL
    levels = logging.getLevelNamesMapping()
    if value not in levels:
        raise ValueError(f"NERC_LOG_LEVEL must be one of {', '.join(sorted(levels))}, got {value!r}")
    return value


def _startup_log_level() -> str:
    # a bad NERC_LOG_LEVEL is reported by the CLI; importing must not fail
    try:
        return get_log_level()
    except ValueError:
        return DEFAULT_LOG_LEVEL


# Configure logging
logging.basicConfig(
    level=_startup_log_level(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger(__name__)

# Model file format written by persistence.save_model
MODEL_FORMAT_VERSION = 1

# Size of the packaged tag set (22 entity tags plus NONE)
N_CLASSES = 23

DEFAULT_ALPHA = 1.0
DEFAULT_FOLDS = 10
DEFAULT_WORKERS = 1

REPORT_FORMATS = ("text", "tsv")
DEFAULT_REPORT_FORMAT = "text"


def _read_float(name: str, default: float) -> float:
    """Read a float environment variable, raising ValueError naming it when malformed."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw.strip())
    except ValueError as e:
        raise ValueError(f"{name} must be a number, got {raw!r}") from e


def _read_int(name: str, default: int) -> int:
    """Read an integer environment variable, raising ValueError naming it when malformed."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.strip())
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e


def get_alpha() -> float:
    """Get the additive smoothing constant from environment."""
    alpha = _read_float("NERC_ALPHA", DEFAULT_ALPHA)
    if alpha <= 0:
        raise ValueError(f"NERC_ALPHA must be positive, got {alpha}")
    return alpha


def get_folds() -> int:
    """Get the number of cross-validation folds from environment."""
    folds = _read_int("NERC_FOLDS", DEFAULT_FOLDS)
    if folds < 2:
        raise ValueError(f"NERC_FOLDS must be at least 2, got {folds}")
    return folds


def get_workers() -> int:
    """Get the cross-validation thread count from environment."""
    workers = _read_int("NERC_WORKERS", DEFAULT_WORKERS)
    if workers < 1:
        raise ValueError(f"NERC_WORKERS must be at least 1, got {workers}")
    return workers


def get_report_format() -> str:
    """Get the report format (text or tsv) from environment."""
    value = os.getenv("NERC_REPORT_FORMAT", DEFAULT_REPORT_FORMAT).strip().lower() or DEFAULT_REPORT_FORMAT
    if value not in REPORT_FORMATS:
        raise ValueError(f"NERC_REPORT_FORMAT must be one of {', '.join(REPORT_FORMATS)}, got {value!r}")
    return value


def resolve_alpha(flag: Optional[float]) -> float:
    """Command-line flag if given, otherwise NERC_ALPHA, otherwise the default."""
    return flag if flag is not None else get_alpha()


def resolve_folds(flag: Optional[int]) -> int:
    """Command-line flag if given, otherwise NERC_FOLDS, otherwise the default."""
    return flag if flag is not None else get_folds()


def resolve_workers(flag: Optional[int]) -> int:
    """Command-line flag if given, otherwise NERC_WORKERS, otherwise the default."""
    return flag if flag is not None else get_workers()


def resolve_report_format(flag: Optional[str]) -> str:
    """Command-line flag if given, otherwise NERC_REPORT_FORMAT, otherwise the default."""
    return flag if flag is not None else get_report_format()


def log_settings(alpha: float, folds: Optional[int] = None, report_format: Optional[str] = None) -> None:
    """Log the effective settings for a run."""
    logger.debug(f"Smoothing alpha: {alpha}")
    if folds is not None:
        logger.debug(f"Cross-validation folds: {folds}")
    if report_format is not None:
        logger.debug(f"Report format: {report_format}")

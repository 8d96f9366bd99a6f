"""Tagged corpus handling for Kannada NERC.

Parses ``word/TAG`` text into token/label sequences, houses the Named Entity
tag set, and produces deterministic dev/test splits and k-fold partitions.

SPDX-License-Identifier: MIT
"""

import logging
import math
import unicodedata
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from types import MappingProxyType
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence, overload

import numpy as np
import yaml

logger = logging.getLogger(__name__)

TAG_SEPARATOR = "/"

_TAGSET_PATH = Path(__file__).parent / "tagset.yaml"


class TagLookupError(LookupError):
    """Unknown tag mnemonic or out-of-range tag label."""


class CorpusParseError(ValueError):
    """A token of a tagged corpus could not be parsed.

    Carries the zero-based token index, the 1-based line number and the
    offending token so that errors in large files can be located.
    """

    def __init__(self, reason: str, index: int, token: str, line: int, source: Optional[str] = None):
        self.reason = reason
        self.index = index
        self.token = token
        self.line = line
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: token {index} {token!r}: {reason}")


@dataclass(frozen=True)
class TagEntry:
    """One row of the tag set."""

    mnemonic: str
    label: int
    description: str
    category: str = ""
    example: str = ""


class TagSet:
    """Immutable bijection between tag mnemonics and integer labels 0..n-1."""

    __slots__ = ("_entries", "_by_mnemonic", "_by_label")

    def __init__(self, entries: Iterable[TagEntry]):
        rows = tuple(entries)
        if not rows:
            raise ValueError("tag set must contain at least one tag")
        by_mnemonic: dict[str, TagEntry] = {}
        by_label: dict[int, TagEntry] = {}
        for entry in rows:
            if entry.mnemonic in by_mnemonic:
                raise ValueError(f"duplicate tag mnemonic: {entry.mnemonic}")
            if entry.label in by_label:
                raise ValueError(f"duplicate tag label: {entry.label}")
            by_mnemonic[entry.mnemonic] = entry
            by_label[entry.label] = entry
        if sorted(by_label) != list(range(len(rows))):
            raise ValueError(f"tag labels must be exactly 0..{len(rows) - 1}")
        self._entries = rows
        self._by_mnemonic: Mapping[str, TagEntry] = MappingProxyType(by_mnemonic)
        self._by_label: Mapping[int, TagEntry] = MappingProxyType(by_label)

    @property
    def entries(self) -> tuple[TagEntry, ...]:
        """Rows in table order (grouped by category, not by label)."""
        return self._entries

    @property
    def mnemonics(self) -> tuple[str, ...]:
        """Mnemonics in label order."""
        return tuple(self._by_label[label].mnemonic for label in range(len(self)))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[TagEntry]:
        return iter(self._entries)

    def __contains__(self, mnemonic: object) -> bool:
        return mnemonic in self._by_mnemonic

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TagSet) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"TagSet({len(self)} tags)"

    def tag_to_label(self, mnemonic: str) -> int:
        try:
            return self._by_mnemonic[mnemonic].label
        except KeyError:
            raise TagLookupError(f"unknown tag mnemonic: {mnemonic!r}") from None

    def label_to_tag(self, label: int) -> str:
        try:
            return self._by_label[label].mnemonic
        except (KeyError, TypeError):
            raise TagLookupError(f"tag label out of range 0..{len(self) - 1}: {label!r}") from None

    def entry(self, label: int) -> TagEntry:
        """Full row for a label."""
        self.label_to_tag(label)
        return self._by_label[label]


def tag_to_label(mnemonic: str, tagset: TagSet) -> int:
    """Return the integer label of a tag mnemonic."""
    return tagset.tag_to_label(mnemonic)


def label_to_tag(label: int, tagset: TagSet) -> str:
    """Return the tag mnemonic of an integer label."""
    return tagset.label_to_tag(label)


def _entry_from_row(row: dict[str, Any]) -> TagEntry:
    return TagEntry(
        mnemonic=str(row["tag"]),
        label=int(row["label"]),
        description=str(row.get("meaning", "")),
        category=str(row.get("category", "")),
        example=str(row.get("example", "")),
    )


def load_tagset(path: Optional[Path] = None) -> TagSet:
    """Load a tag set from a YAML file (the packaged tag set by default).

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the file does not describe a valid bijection
    """
    tagset_path = Path(path) if path is not None else _TAGSET_PATH
    logger.debug(f"Loading tag set from: {tagset_path}")
    with open(tagset_path, "r", encoding="utf-8") as f:
        document = yaml.safe_load(f)

    if not isinstance(document, dict) or not isinstance(document.get("tags"), list):
        raise ValueError(f"{tagset_path}: expected a mapping with a 'tags' list")
    try:
        entries = [_entry_from_row(row) for row in document["tags"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"{tagset_path}: malformed tag row: {e}") from e
    return TagSet(entries)


@lru_cache(maxsize=1)
def default_tagset() -> TagSet:
    """Return the packaged 23-tag Named Entity tag set."""
    return load_tagset()


def normalize_surface(surface: str) -> str:
    """Canonicalize composed/decomposed codepoint sequences (NFC)."""
    return unicodedata.normalize("NFC", surface)


@dataclass(frozen=True, slots=True)
class TaggedToken:
    """A surface token paired with its tag label."""

    surface: str
    label: int

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("token surface must be nonempty")
        if any(ch.isspace() for ch in self.surface):
            raise ValueError(f"token surface contains whitespace: {self.surface!r}")
        if self.label < 0:
            raise ValueError(f"token label must be nonnegative: {self.label}")
        object.__setattr__(self, "surface", normalize_surface(self.surface))


@dataclass(frozen=True)
class Corpus:
    """Ordered, immutable sequence of tagged tokens."""

    tokens: tuple[TaggedToken, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "Corpus":
        return cls(tuple(TaggedToken(surface, label) for surface, label in pairs))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[TaggedToken]:
        return iter(self.tokens)

    @overload
    def __getitem__(self, key: int) -> TaggedToken: ...

    @overload
    def __getitem__(self, key: slice) -> "Corpus": ...

    def __getitem__(self, key: int | slice) -> "TaggedToken | Corpus":
        if isinstance(key, slice):
            return Corpus(self.tokens[key])
        return self.tokens[key]

    def __add__(self, other: "Corpus") -> "Corpus":
        return Corpus(self.tokens + other.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [token.surface for token in self.tokens]

    @property
    def labels(self) -> list[int]:
        return [token.label for token in self.tokens]

    def take(self, positions: Sequence[int]) -> "Corpus":
        """Tokens at the given positions, in the order given."""
        return Corpus(tuple(self.tokens[i] for i in positions))


def _parse_token(raw: str, index: int, line: int, tagset: TagSet, source: Optional[str]) -> TaggedToken:
    surface, sep, mnemonic = raw.rpartition(TAG_SEPARATOR)
    if not sep:
        raise CorpusParseError("missing '/TAG' suffix", index, raw, line, source)
    if not surface:
        raise CorpusParseError("empty surface", index, raw, line, source)
    if mnemonic not in tagset:
        raise CorpusParseError(f"unknown tag mnemonic {mnemonic!r}", index, raw, line, source)
    return TaggedToken(normalize_surface(surface), tagset.tag_to_label(mnemonic))


def parse_tagged_text(text: str, tagset: TagSet, source: Optional[str] = None) -> Corpus:
    """Parse whitespace-separated ``surface/MNEMONIC`` tokens into a Corpus.

    Each token is split at its last "/" so surfaces containing "/" survive.

    Raises:
        CorpusParseError: On a token without "/", with an empty surface or an unknown mnemonic
    """
    tokens: list[TaggedToken] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        for raw in line.split():
            tokens.append(_parse_token(raw, len(tokens), line_number, tagset, source))
    return Corpus(tuple(tokens))


def read_corpus(path: Path | str, tagset: TagSet) -> Corpus:
    """Read and parse a UTF-8 tagged corpus file."""
    corpus_path = Path(path)
    text = corpus_path.read_text(encoding="utf-8")
    corpus = parse_tagged_text(text, tagset, source=str(corpus_path))
    logger.info(f"Read {len(corpus)} tagged tokens from {corpus_path}")
    return corpus


def emit_tagged(corpus: Corpus, tagset: TagSet) -> str:
    """Render a Corpus as ``surface/MNEMONIC`` tokens joined by single spaces."""
    return " ".join(f"{token.surface}{TAG_SEPARATOR}{tagset.label_to_tag(token.label)}" for token in corpus)


def tokenize_lines(text: str) -> list[list[str]]:
    """Split untagged text into NFC-normalized tokens, one list per input line.

    Punctuation and brackets stay attached to their tokens.
    """
    return [[normalize_surface(raw) for raw in line.split()] for line in text.splitlines()]


def _as_fraction(value: Fraction | float | int | str) -> Fraction:
    if isinstance(value, float):
        # decimal reading, so 0.3 means 3/10 rather than its binary neighbour
        return Fraction(repr(value))
    return Fraction(value)


def split_dev_test(corpus: Corpus, test_fraction: Fraction | float | str) -> tuple[Corpus, Corpus]:
    """Contiguous split: the last floor(n * test_fraction) tokens become the test set.

    Raises:
        ValueError: If the corpus is empty or the fraction is outside (0, 1)
    """
    fraction = _as_fraction(test_fraction)
    if not 0 < fraction < 1:
        raise ValueError(f"test fraction must lie strictly between 0 and 1, got {test_fraction}")
    if not len(corpus):
        raise ValueError("cannot split an empty corpus")
    n_test = math.floor(len(corpus) * fraction)
    boundary = len(corpus) - n_test
    return corpus[:boundary], corpus[boundary:]


def fold_sizes(n: int, k: int) -> list[int]:
    """Sizes of k contiguous folds over n items; the first n mod k folds are one larger."""
    if k < 2:
        raise ValueError(f"number of folds must be at least 2, got {k}")
    if k > n:
        raise ValueError(f"number of folds ({k}) exceeds the number of tokens ({n})")
    base, extra = divmod(n, k)
    return [base + 1 if i < extra else base for i in range(k)]


def k_folds(dev: Corpus, k: int, shuffle_seed: Optional[int] = None) -> list[tuple[Corpus, Corpus]]:
    """Partition dev into k folds and pair each fold (devtest) with the rest (train).

    Folds are contiguous unless ``shuffle_seed`` is given, in which case positions
    are permuted first; training parts always keep the original token order.

    Raises:
        ValueError: If k < 2 or k exceeds the number of tokens
    """
    sizes = fold_sizes(len(dev), k)
    if shuffle_seed is None:
        order = np.arange(len(dev))
    else:
        order = np.random.default_rng(shuffle_seed).permutation(len(dev))

    bounds = np.concatenate(([0], np.cumsum(sizes)))
    folds: list[tuple[Corpus, Corpus]] = []
    for i in range(k):
        held_out = np.sort(order[bounds[i] : bounds[i + 1]])
        mask = np.ones(len(dev), dtype=bool)
        mask[held_out] = False
        train = dev.take(np.flatnonzero(mask).tolist())
        devtest = dev.take(held_out.tolist())
        folds.append((train, devtest))
    return folds

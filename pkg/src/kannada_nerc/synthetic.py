"""Deterministic synthetic tagged corpora for end-to-end and scale checks.

SPDX-License-Identifier: MIT
"""

import logging
from functools import lru_cache

import numpy as np

from .corpus import Corpus, TagSet, TaggedToken, normalize_surface

logger = logging.getLogger(__name__)

_CONSONANTS = "ಕಖಗಘಙಚಛಜಝಞಟಠಡಢಣತಥದಧನಪಫಬಭಮಯರಲವಶಷಸಹಳ"
# vowel signs without canonical decompositions, so NFC leaves syllables unchanged
_VOWEL_SIGNS = ("", "ಾ", "ಿ", "ು", "ೂ", "ೃ", "ೆ", "ೌ")


@lru_cache(maxsize=1)
def _syllables() -> tuple[str, ...]:
    return tuple(c + v for c in _CONSONANTS for v in _VOWEL_SIGNS)


def type_surface(index: int) -> str:
    """Distinct Kannada-script word for every nonnegative index."""
    syllables = _syllables()
    base = len(syllables)
    parts = [syllables[index % base]]
    index //= base
    while index:
        index -= 1
        parts.append(syllables[index % base])
        index //= base
    return "".join(reversed(parts))


def bijective_corpus(n_tokens: int, tagset: TagSet) -> Corpus:
    """One token type per tag, cycled through the tag labels in order.

    Every type recurs every len(tagset) tokens, so any contiguous fold leaves
    each type in its training part once the corpus is long enough.
    """
    n_tags = len(tagset)
    surfaces = [type_surface(label) for label in range(n_tags)]
    return Corpus(tuple(TaggedToken(surfaces[i % n_tags], i % n_tags) for i in range(n_tokens)))


def zipf_corpus(
    n_tokens: int,
    n_types: int,
    tagset: TagSet,
    seed: int = 0,
    exponent: float = 1.1,
    none_share: float = 0.8,
) -> Corpus:
    """Corpus with Zipf-like type frequencies and a NONE-heavy label mix.

    Each type has one fixed label; every type occurs at least once.
    """
    if n_types > n_tokens:
        raise ValueError(f"cannot place {n_types} types in {n_tokens} tokens")
    rng = np.random.default_rng(seed)

    none_label = tagset.tag_to_label("NONE") if "NONE" in tagset else len(tagset) - 1
    entity_labels = np.array([label for label in range(len(tagset)) if label != none_label])
    is_none = rng.random(n_types) < none_share
    type_labels = np.where(is_none, none_label, rng.choice(entity_labels, size=n_types))

    weights = 1.0 / np.arange(1, n_types + 1) ** exponent
    extra = rng.choice(n_types, size=n_tokens - n_types, p=weights / weights.sum())
    sequence = np.concatenate((np.arange(n_types), extra))
    rng.shuffle(sequence)

    surfaces = [normalize_surface(type_surface(i)) for i in range(n_types)]
    logger.debug(f"Generated synthetic corpus: {n_tokens} tokens over {n_types} types")
    return Corpus(tuple(TaggedToken(surfaces[t], int(type_labels[t])) for t in sequence))

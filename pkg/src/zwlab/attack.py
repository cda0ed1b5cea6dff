"""Invisible-codepoint injection into the negative words of a sentence.

Two injection masks are supported: one invisible codepoint dropped into
the middle of a target word, or one woven between every pair of
characters plus both ends. Replacement happens by span substitution on
the original string, so removing the injected codepoints reproduces the
input byte-for-byte -- the sanitizer is an exact inverse.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from .codepoints import contains_invisible, is_invisible, zero_width_set
from .lexicon import SentimentLexicon, token_core, token_core_span, word_is_negative

_TOKEN_RE = re.compile(r"\S+")


class MaskKind(str, Enum):
    """Injection strategy: single mid-word insert, or full saturation."""

    MASK1 = "mask1"
    MASK2 = "mask2"


class Target(NamedTuple):
    """One replaced token: its position and both surface forms."""

    token_index: int
    original_token: str
    poisoned_token: str


@dataclass(frozen=True)
class ManipulationRecord:
    """Outcome of poisoning one sentence.

    Stripping invisible codepoints from ``poisoned`` always yields
    ``original``; ``targets`` is empty iff nothing was replaced.
    """

    original: str
    poisoned: str
    mask: MaskKind
    targets: tuple[Target, ...]
    seed: int

    @property
    def modified(self) -> bool:
        return bool(self.targets)

    def to_dict(self) -> dict:
        return {
            "original": self.original,
            "poisoned": self.poisoned,
            "mask": self.mask.value,
            "seed": self.seed,
            "targets": [
                {"token_index": t.token_index, "original": t.original_token, "poisoned": t.poisoned_token}
                for t in self.targets
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)


@dataclass(frozen=True)
class PoisonStats:
    """Sentence counts from a corpus poisoning pass."""

    total: int
    modified: int
    unmodified: int
    discarded: int


def _resolve_charset(charset: Sequence[str] | None) -> tuple[str, ...]:
    if charset is None:
        return zero_width_set().chars
    pool = tuple(charset)
    if not pool:
        raise ValueError("charset must be non-empty")
    for ch in pool:
        if len(ch) != 1 or not is_invisible(ch):
            raise ValueError(f"charset member {ch!r} is not in the zero-width set")
    return pool


def inject_word(
    word: str,
    mask: MaskKind,
    rand: random.Random,
    charset: Sequence[str] | None = None,
) -> str:
    """Insert invisible codepoints into a single word.

    MASK1 inserts one codepoint at index floor(n/2); MASK2 inserts n+1
    codepoints: before, between, and after every character. Each insert
    is drawn from ``charset`` (default: the full zero-width set) by the
    caller's random source. The word must be non-empty and must not
    already contain invisible codepoints.
    """
    if not word:
        raise ValueError("cannot inject into an empty word")
    if contains_invisible(word):
        raise ValueError("word already contains invisible codepoints")
    pool = _resolve_charset(charset)
    if mask is MaskKind.MASK1:
        mid = len(word) // 2
        return word[:mid] + rand.choice(pool) + word[mid:]
    if mask is MaskKind.MASK2:
        parts = [rand.choice(pool)]
        for ch in word:
            parts.append(ch)
            parts.append(rand.choice(pool))
        return "".join(parts)
    raise ValueError(f"unknown mask {mask!r}")


def manipulate(
    sentence: str,
    mask: MaskKind,
    lex: SentimentLexicon,
    seed: int,
    charset: Sequence[str] | None = None,
) -> ManipulationRecord:
    """Poison every negative word of a sentence in place.

    Tokens are maximal whitespace-delimited runs; leading and trailing
    punctuation is left outside the injected span. A token is targeted
    when its trimmed core reads as negative under the lexicon. All
    surrounding codepoints are preserved exactly, so the result strips
    back to the input.
    """
    if contains_invisible(sentence):
        raise ValueError("sentence already contains invisible codepoints")
    pool = _resolve_charset(charset)
    rand = random.Random(seed)
    pieces: list[str] = []
    targets: list[Target] = []
    cursor = 0
    for token_index, match in enumerate(_TOKEN_RE.finditer(sentence)):
        token = match.group()
        start, end = token_core_span(token)
        core = token[start:end]
        if not core or not word_is_negative(core, lex):
            continue
        poisoned_core = inject_word(core, mask, rand, charset=pool)
        pieces.append(sentence[cursor : match.start() + start])
        pieces.append(poisoned_core)
        cursor = match.start() + end
        poisoned_token = token[:start] + poisoned_core + token[end:]
        targets.append(Target(token_index, token, poisoned_token))
    pieces.append(sentence[cursor:])
    return ManipulationRecord(
        original=sentence,
        poisoned="".join(pieces),
        mask=mask,
        targets=tuple(targets),
        seed=seed,
    )


def can_manipulate(sentence: str, lex: SentimentLexicon) -> bool:
    """True iff the sentence contains at least one targetable word."""
    for token in sentence.split():
        core = token_core(token)
        if core and word_is_negative(core, lex):
            return True
    return False


def poison_corpus(
    corpus: Iterable[str],
    mask: MaskKind,
    lex: SentimentLexicon,
    seed: int,
    discard_unmodified: bool = True,
    charset: Sequence[str] | None = None,
) -> tuple[list[ManipulationRecord], PoisonStats]:
    """Apply ``manipulate`` per sentence with per-sentence seeds (seed + index).

    Sentences with no targetable word are either dropped
    (``discard_unmodified``, the default) or kept unchanged. Domain
    errors are re-raised with the offending sentence index.
    """
    records: list[ManipulationRecord] = []
    total = modified = unmodified = discarded = 0
    for i, sentence in enumerate(corpus):
        total += 1
        try:
            record = manipulate(sentence, mask, lex, seed + i, charset=charset)
        except ValueError as exc:
            raise ValueError(f"sentence {i}: {exc}") from exc
        if record.modified:
            modified += 1
            records.append(record)
        elif discard_unmodified:
            discarded += 1
        else:
            unmodified += 1
            records.append(record)
    return records, PoisonStats(total=total, modified=modified, unmodified=unmodified, discarded=discarded)

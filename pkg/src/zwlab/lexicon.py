"""Word-polarity lexicon, a minimal stemmer, and sentence negativity scoring.

The lexicon is the oracle that decides which words an injection attack
targets, and the negativity score is the transparent stand-in for an
opaque sentiment service: it sums the negative valence found in a
sentence and normalizes by length. Both are deterministic on purpose so
that every downstream measurement is reproducible.

Lexicon files are UTF-8 TSV: ``word<TAB>valence`` per line, ``#`` lines
are comments; valences lie in [-1, +1].
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from .codepoints import contains_invisible
from .errors import DataError

DEFAULT_NEGATIVE_THRESHOLD = -0.05

# Suffixes stripped by stem(), tried in this order; at most one fires,
# and only when the remainder keeps at least three characters.
_STEM_SUFFIXES = ("ing", "ed", "es", "ly", "s")
_MIN_STEM_LEN = 3


@dataclass(frozen=True)
class SentimentLexicon:
    """Immutable word -> valence mapping.

    Keys are lowercase and contain no invisible codepoints; valences lie
    in [-1, +1]. ``negative_threshold`` is the (negative) valence at or
    below which a word counts as negative.
    """

    entries: dict[str, float] = field(default_factory=dict)
    negative_threshold: float = DEFAULT_NEGATIVE_THRESHOLD

    def __post_init__(self) -> None:
        if self.negative_threshold >= 0:
            raise ValueError("negative_threshold must be < 0")

    def __len__(self) -> int:
        return len(self.entries)

    def valence(self, word: str) -> float:
        """Valence of a (already lowercased/stemmed) word; 0.0 if absent."""
        return self.entries.get(word, 0.0)


def load_lexicon(
    source: IO[str] | Iterable[str],
    negative_threshold: float = DEFAULT_NEGATIVE_THRESHOLD,
) -> SentimentLexicon:
    """Parse a TSV lexicon from a readable text stream or line iterable.

    Words are lowercased on load; duplicates keep the last value.
    Raises DataError naming the line number for malformed lines, and for
    valences outside [-1, +1].
    """
    entries: dict[str, float] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise DataError(f"line {lineno}: expected 'word<TAB>valence', got {line!r}")
        word, _, value = line.partition("\t")
        word = word.strip().lower()
        if not word:
            raise DataError(f"line {lineno}: empty word")
        if contains_invisible(word):
            raise DataError(f"line {lineno}: word contains invisible codepoints")
        try:
            valence = float(value.strip())
        except ValueError:
            raise DataError(f"line {lineno}: non-numeric valence {value.strip()!r}") from None
        if not -1.0 <= valence <= 1.0:
            raise DataError(f"line {lineno}: valence {valence} outside [-1, 1]")
        entries[word] = valence
    return SentimentLexicon(entries=entries, negative_threshold=negative_threshold)


def load_lexicon_file(
    path: str | Path,
    negative_threshold: float = DEFAULT_NEGATIVE_THRESHOLD,
) -> SentimentLexicon:
    with open(path, encoding="utf-8") as fh:
        return load_lexicon(fh, negative_threshold=negative_threshold)


_STARTER: SentimentLexicon | None = None


def starter_lexicon() -> SentimentLexicon:
    """The small general-purpose lexicon shipped with the package."""
    global _STARTER
    if _STARTER is None:
        text = resources.files("zwlab").joinpath("data/starter_lexicon.tsv").read_text("utf-8")
        _STARTER = load_lexicon(text.splitlines())
    return _STARTER


def stem(word: str) -> str:
    """Crude suffix-stripping stem: drops one of -ing/-ed/-es/-ly/-s.

    A suffix is stripped only when the remainder keeps at least three
    characters; otherwise the word is returned unchanged.
    """
    for suffix in _STEM_SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= _MIN_STEM_LEN:
            return word[: -len(suffix)]
    return word


def word_is_negative(word: str, lex: SentimentLexicon) -> bool:
    """True iff the stemmed, lowercased word has valence at or below the threshold.

    Words missing from the lexicon have valence 0 and are never
    negative. A word carrying injected invisible codepoints can never
    match a lexicon key, so it always reads as neutral -- this is the
    mechanism the injection attack exploits.
    """
    return lex.valence(stem(word.lower())) <= lex.negative_threshold


def token_core_span(token: str) -> tuple[int, int]:
    """Start/end indices of the token minus leading/trailing punctuation."""
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return start, end


def token_core(token: str) -> str:
    """The token with leading/trailing punctuation removed."""
    start, end = token_core_span(token)
    return token[start:end]


def sentence_negativity(text: str, lex: SentimentLexicon) -> float:
    """Mean negative valence per token, in [0, 1]; 0.0 for empty text.

    Each whitespace token contributes max(0, -valence) of its trimmed,
    lowercased, stemmed core; the sum is divided by the token count.
    """
    tokens = text.split()
    if not tokens:
        return 0.0
    total = 0.0
    for token in tokens:
        core = token_core(token)
        if not core:
            continue
        total += max(0.0, -lex.valence(stem(core.lower())))
    return total / len(tokens)

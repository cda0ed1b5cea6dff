"""A small, fully inspectable text pipeline: preprocess, tokenize, index, encode.

This mirrors the stages a production text classifier runs before its
model sees anything: cleanup, token/n-gram extraction, vocabulary
lookup with an out-of-vocabulary policy, and numeric encoding. Keeping
every stage explicit is the point -- injection attacks act on the
indexing stage, and here the effect is directly observable.
"""
from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DataError, StateError
from .lexicon import stem

# Words dropped by the optional stopword filter (word level only).
STOPWORDS = frozenset(
    """a an the and or but if then else this that these those i you he she it we
    they is are was were be been being am do does did done to of in on at by for
    with from as so not no nor my your his her its our their me him them us what
    which who whom when where why how all any both each few more most other some
    such only own same than too very can will just should now about into over
    under again once here there""".split()
)

# Word tokens never contain whitespace, so a single space is a safe
# reserved separator when joining word n-grams.
NGRAM_JOIN = " "

_URL_RE = re.compile(r"https?://\S+")
_MENTION_RE = re.compile(r"@\w+")
_HASHTAG_RE = re.compile(r"#\w+")
_WS_RE = re.compile(r"\s+")


class Level(str, Enum):
    WORD = "word"
    CHAR = "char"


@dataclass(frozen=True)
class PreprocessConfig:
    """Independent cleanup switches applied ahead of tokenization.

    ``strip_social`` removes hashtags, mentions, and URLs. Stopword
    removal and stemming are word-level concerns and take effect inside
    word tokenization, not on the raw text.
    """

    lowercase: bool = False
    strip_social: bool = False
    remove_stopwords: bool = False
    apply_stem: bool = False


@dataclass(frozen=True)
class TokenizerSpec:
    """Token level plus an inclusive n-gram range."""

    level: Level
    ngram_lo: int = 1
    ngram_hi: int = 1

    def __post_init__(self) -> None:
        if self.ngram_lo < 1:
            raise ValueError("ngram_lo must be >= 1")
        if self.ngram_hi < self.ngram_lo:
            raise ValueError("ngram_hi must be >= ngram_lo")


@dataclass(frozen=True)
class MapToUnk:
    """Out-of-vocabulary tokens map to a single reserved UNK id."""


@dataclass(frozen=True)
class Discard:
    """Out-of-vocabulary tokens are dropped from the id sequence."""


@dataclass(frozen=True)
class Placeholders:
    """Distinct OOV tokens get UNK1..UNKk in first-occurrence order, wrapping."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")


OovPolicy = Union[MapToUnk, Discard, Placeholders]


@dataclass(frozen=True)
class Vocabulary:
    """Frequency-capped token -> dense id mapping, built from training data only.

    Content tokens occupy ids [0, len(index_of)); reserved special ids
    (UNK, or UNK1..UNKk placeholders) follow after the cap when the
    build policy requires them.
    """

    index_of: Mapping[str, int]
    max_size: int
    unk_id: int | None = None
    placeholder_ids: tuple[int, ...] = ()
    _reverse: Mapping[int, str] = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_reverse", {i: tok for tok, i in self.index_of.items()})

    @property
    def size(self) -> int:
        """Total id count, special tokens included."""
        return len(self.index_of) + (self.unk_id is not None) + len(self.placeholder_ids)

    def id_of(self, token: str) -> int | None:
        return self.index_of.get(token)

    def token_of(self, token_id: int) -> str:
        """Token text for an id; special ids render as UNK / UNK1.. names."""
        if token_id == self.unk_id:
            return "UNK"
        if token_id in self.placeholder_ids:
            return f"UNK{self.placeholder_ids.index(token_id) + 1}"
        token = self._reverse.get(token_id)
        if token is None:
            raise KeyError(f"unknown token id {token_id}")
        return token


@dataclass(frozen=True, eq=False)
class IdfStats:
    """Inverse document frequencies fitted on a training corpus."""

    weights: np.ndarray
    n_docs: int


@dataclass(frozen=True)
class Count:
    """Occurrence-count vector over the vocabulary."""


@dataclass(frozen=True, eq=False)
class TfIdf:
    """Count times smoothed idf, L2-normalized; requires fitted stats."""

    stats: IdfStats | None = None


@dataclass(frozen=True)
class OneHot:
    """One indicator row per token position."""


@dataclass(frozen=True)
class Dense:
    """Rows from a seeded fixed random table, uniform in [-0.1, 0.1]."""

    dim: int
    seed: int


EncodeKind = Union[Count, TfIdf, OneHot, Dense]


def preprocess(text: str, cfg: PreprocessConfig) -> str:
    """Apply enabled text-level transforms: strip_social, then lowercase."""
    if cfg.strip_social:
        text = _URL_RE.sub(" ", text)
        text = _MENTION_RE.sub(" ", text)
        text = _HASHTAG_RE.sub(" ", text)
        text = _WS_RE.sub(" ", text).strip()
    if cfg.lowercase:
        text = text.lower()
    return text


def _split_words(text: str) -> list[str]:
    """Maximal runs of non-whitespace, non-punctuation codepoints."""
    words: list[str] = []
    current: list[str] = []
    for ch in text:
        if ch.isspace() or unicodedata.category(ch).startswith("P"):
            if current:
                words.append("".join(current))
                current = []
        else:
            current.append(ch)
    if current:
        words.append("".join(current))
    return words


def tokenize(text: str, spec: TokenizerSpec, cfg: PreprocessConfig | None = None) -> list[str]:
    """Emit n-grams for every n in [ngram_lo, ngram_hi], in reading order.

    Word level splits on whitespace/punctuation and joins n-grams with a
    reserved separator; stopword removal and stemming apply here when a
    config enables them. Char level runs over raw codepoints, whitespace
    included, and n-grams are plain substrings.
    """
    if spec.level is Level.WORD:
        units = _split_words(text)
        if cfg is not None:
            if cfg.remove_stopwords:
                units = [w for w in units if w.lower() not in STOPWORDS]
            if cfg.apply_stem:
                units = [stem(w) for w in units]
        joiner = NGRAM_JOIN
    else:
        units = list(text)
        joiner = ""
    tokens: list[str] = []
    for n in range(spec.ngram_lo, spec.ngram_hi + 1):
        for i in range(len(units) - n + 1):
            tokens.append(units[i] if n == 1 else joiner.join(units[i : i + n]))
    return tokens


def build_vocab(corpus: Iterable[Sequence[str]], max_size: int, policy: OovPolicy) -> Vocabulary:
    """Keep the max_size most frequent tokens (ties broken lexicographically).

    Special-token ids required by the policy are reserved after the cap.
    Raises on an empty corpus.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    counts: Counter[str] = Counter()
    for tokens in corpus:
        counts.update(tokens)
    if not counts:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    index_of = {token: i for i, (token, _) in enumerate(ranked[:max_size])}
    unk_id = None
    placeholder_ids: tuple[int, ...] = ()
    next_id = len(index_of)
    if isinstance(policy, MapToUnk):
        unk_id = next_id
    elif isinstance(policy, Placeholders):
        placeholder_ids = tuple(range(next_id, next_id + policy.k))
    return Vocabulary(index_of=index_of, max_size=max_size, unk_id=unk_id, placeholder_ids=placeholder_ids)


def index(tokens: Sequence[str], vocab: Vocabulary, policy: OovPolicy) -> list[int]:
    """Map tokens to ids, handling out-of-vocabulary tokens per policy."""
    if isinstance(policy, Discard):
        return [i for i in (vocab.id_of(t) for t in tokens) if i is not None]
    if isinstance(policy, MapToUnk):
        if vocab.unk_id is None:
            raise ValueError("vocabulary was not built with an UNK id")
        return [i if i is not None else vocab.unk_id for i in (vocab.id_of(t) for t in tokens)]
    if isinstance(policy, Placeholders):
        if len(vocab.placeholder_ids) != policy.k:
            raise ValueError(
                f"vocabulary reserves {len(vocab.placeholder_ids)} placeholders, policy wants {policy.k}"
            )
        assigned: dict[str, int] = {}
        ids: list[int] = []
        for token in tokens:
            i = vocab.id_of(token)
            if i is None:
                if token not in assigned:
                    assigned[token] = vocab.placeholder_ids[len(assigned) % policy.k]
                i = assigned[token]
            ids.append(i)
        return ids
    raise ValueError(f"unknown policy {policy!r}")


def fit_idf(documents: Iterable[Sequence[int]], vocab: Vocabulary) -> IdfStats:
    """Fit smoothed inverse document frequencies: ln((1+N)/(1+df)) + 1."""
    df = np.zeros(vocab.size, dtype=np.float64)
    n_docs = 0
    for ids in documents:
        n_docs += 1
        for i in set(ids):
            df[i] += 1
    weights = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
    return IdfStats(weights=weights, n_docs=n_docs)


def _to_ids(items: Sequence[int | str], vocab: Vocabulary) -> list[int]:
    ids: list[int] = []
    for item in items:
        if isinstance(item, str):
            i = vocab.id_of(item)
            if i is None:
                raise ValueError(f"token {item!r} is not in the vocabulary; index() it with a policy first")
            ids.append(i)
        else:
            ids.append(item)
    return ids


_DENSE_TABLES: dict[tuple[int, int, int], np.ndarray] = {}


def _dense_table(size: int, dim: int, seed: int) -> np.ndarray:
    key = (size, dim, seed)
    table = _DENSE_TABLES.get(key)
    if table is None:
        rng = np.random.default_rng(seed)
        table = rng.uniform(-0.1, 0.1, size=(size, dim))
        _DENSE_TABLES[key] = table
    return table


def encode(items: Sequence[int | str], vocab: Vocabulary, kind: EncodeKind) -> np.ndarray:
    """Turn an id (or in-vocab token) sequence into a numeric feature structure.

    Count -> occurrence vector over the vocabulary; TfIdf -> counts
    times fitted idf, L2-normalized; OneHot -> one indicator row per
    position; Dense -> rows of a seeded fixed random table.
    """
    ids = _to_ids(items, vocab)
    size = vocab.size
    if isinstance(kind, Count):
        return np.bincount(ids, minlength=size).astype(np.int64)
    if isinstance(kind, TfIdf):
        if kind.stats is None:
            raise StateError("TfIdf encoding requires statistics fitted on a training corpus")
        vec = np.bincount(ids, minlength=size).astype(np.float64) * kind.stats.weights
        norm = np.linalg.norm(vec)
        return vec / norm if norm > 0 else vec
    if isinstance(kind, OneHot):
        rows = np.zeros((len(ids), size), dtype=np.int64)
        for pos, i in enumerate(ids):
            rows[pos, i] = 1
        return rows
    if isinstance(kind, Dense):
        table = _dense_table(size, kind.dim, kind.seed)
        return table[ids] if ids else np.zeros((0, kind.dim), dtype=np.float64)
    raise ValueError(f"unknown encoding {kind!r}")


def _escape(token: str) -> str:
    return token.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")


def _unescape(token: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(token):
        ch = token[i]
        if ch == "\\" and i + 1 < len(token):
            nxt = token[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def vocab_lines(vocab: Vocabulary) -> list[str]:
    """``token<TAB>id`` lines in id order; special ids use UNK / UNKn names.

    Tokens containing tab/newline/backslash (possible at char level) are
    backslash-escaped so the file stays one entry per line.
    """
    return [f"{_escape(vocab.token_of(i))}\t{i}" for i in range(vocab.size)]


def save_vocab(vocab: Vocabulary, path: str | Path) -> None:
    Path(path).write_text("\n".join(vocab_lines(vocab)) + "\n", encoding="utf-8")


def load_vocab(path: str | Path, policy: OovPolicy, max_size: int | None = None) -> Vocabulary:
    """Rebuild a vocabulary from a ``token<TAB>id`` file and its build policy."""
    entries: list[tuple[str, int]] = []
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        if not line:
            continue
        if "\t" not in line:
            raise DataError(f"{path}: line {lineno}: expected 'token<TAB>id'")
        token, _, raw_id = line.partition("\t")
        try:
            entries.append((_unescape(token), int(raw_id)))
        except ValueError:
            raise DataError(f"{path}: line {lineno}: non-numeric id {raw_id!r}") from None
    n_special = 1 if isinstance(policy, MapToUnk) else policy.k if isinstance(policy, Placeholders) else 0
    content = entries[: len(entries) - n_special] if n_special else entries
    index_of = {token: i for token, i in content}
    next_id = len(index_of)
    unk_id = next_id if isinstance(policy, MapToUnk) else None
    placeholder_ids = tuple(range(next_id, next_id + policy.k)) if isinstance(policy, Placeholders) else ()
    return Vocabulary(
        index_of=index_of,
        max_size=max_size if max_size is not None else max(1, len(index_of)),
        unk_id=unk_id,
        placeholder_ids=placeholder_ids,
    )


def idf_lines(stats: IdfStats, vocab: Vocabulary) -> list[str]:
    """``token<TAB>idf`` lines in id order."""
    return [f"{_escape(vocab.token_of(i))}\t{float(stats.weights[i])!r}" for i in range(vocab.size)]


def save_idf(stats: IdfStats, vocab: Vocabulary, path: str | Path) -> None:
    Path(path).write_text("\n".join(idf_lines(stats, vocab)) + "\n", encoding="utf-8")

"""Corpus ingestion and the end-to-end desk-scale experiment.

The experiment mirrors a realistic evaluation: split a labeled
sentiment corpus, derive an attackable "real" set from the negative
test sentences, poison it under both masks, train the four-way
tokenizer/OOV-policy matrix, and measure accuracy, attack success, and
negativity collapse. Everything is deterministic given the seed.
"""
from __future__ import annotations

import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
import numpy as np

from . import __version__
from .attack import MaskKind, can_manipulate, poison_corpus
from .codepoints import strip_invisible
from .errors import DataError
from .lexicon import SentimentLexicon, sentence_negativity, starter_lexicon
from .metrics import ScoreDistribution, summarize
from .models import (
    AttackReport,
    TrainConfig,
    attack_success,
    build_feature_spec,
    evaluate_accuracy,
    train,
)
from .pipeline import Discard, Level, MapToUnk, OovPolicy, PreprocessConfig, TokenizerSpec

SCHEMA_VERSION = "1"

REPORT_FILE = "report.json"
TABLE_FILE = "results_table.csv"
DISTRIBUTIONS_FILE = "distributions.csv"


class CorpusFormat(str, Enum):
    LINES = "lines"
    LABELED_CSV = "labeled-csv"


@dataclass(frozen=True)
class CorpusItem:
    text: str
    label: int | None = None


@dataclass(frozen=True)
class Corpus:
    """A sequence of texts, either all labeled (0/1) or all unlabeled."""

    items: tuple[CorpusItem, ...]
    source: str | None = None

    def __post_init__(self) -> None:
        kinds = {item.label is None for item in self.items}
        if len(kinds) > 1:
            raise ValueError("labeled and unlabeled items cannot be mixed in one corpus")

    def __len__(self) -> int:
        return len(self.items)

    @property
    def labeled(self) -> bool:
        return bool(self.items) and self.items[0].label is not None

    def texts(self) -> list[str]:
        return [item.text for item in self.items]

    def pairs(self) -> list[tuple[str, int]]:
        if not self.labeled:
            raise ValueError("corpus is unlabeled")
        return [(item.text, item.label) for item in self.items]


def load_corpus(path: str | Path, fmt: CorpusFormat = CorpusFormat.LINES) -> Corpus:
    """Load a UTF-8 corpus file.

    LINES: one unlabeled text per line. LABELED_CSV: ``label,text`` rows
    with label in {0, 1} and standard CSV quoting. Malformed rows and
    invalid UTF-8 raise DataError with the line number.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"{path}: not valid UTF-8 ({exc})") from exc
    if fmt is CorpusFormat.LINES:
        items = tuple(CorpusItem(text=line) for line in raw.splitlines())
        return Corpus(items=items, source=str(path))
    if fmt is CorpusFormat.LABELED_CSV:
        items_list: list[CorpusItem] = []
        reader = csv.reader(io.StringIO(raw))
        for lineno, row in enumerate(reader, start=1):
            if not row:
                continue
            if len(row) != 2:
                raise DataError(f"{path}: line {lineno}: expected 'label,text', got {len(row)} fields")
            label_raw, text = row
            if label_raw not in ("0", "1"):
                raise DataError(f"{path}: line {lineno}: label must be 0 or 1, got {label_raw!r}")
            items_list.append(CorpusItem(text=text, label=int(label_raw)))
        return Corpus(items=tuple(items_list), source=str(path))
    raise ValueError(f"unknown corpus format {fmt!r}")


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back out in the format it would be loaded from."""
    path = Path(path)
    if corpus.labeled:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for item in corpus.items:
            writer.writerow([item.label, item.text])
        path.write_text(buf.getvalue(), encoding="utf-8")
    else:
        path.write_text("\n".join(corpus.texts()) + ("\n" if corpus.items else ""), encoding="utf-8")


# --- shipped toy corpus ---------------------------------------------------

_NOUNS = (
    "album", "movie", "book", "song", "game", "show",
    "meal", "phone", "hotel", "garden", "recipe", "podcast",
)
_NEG_VERBS = ("hate", "despise", "detest", "loathe", "dislike", "resent")
_POS_VERBS = ("love", "adore", "cherish", "admire", "enjoy", "treasure")
_NEG_ADJS = (
    "awful", "terrible", "horrible", "dreadful", "nasty", "pathetic",
    "miserable", "dismal", "vile", "foul", "rotten", "grim", "bleak", "dull", "ugly",
)
_POS_ADJS = (
    "wonderful", "awesome", "excellent", "fantastic", "brilliant", "superb",
    "splendid", "terrific", "stellar", "divine", "graceful", "radiant", "pleasant", "tasty",
)

_PLAIN_TEMPLATES = (
    "i {verb} this {noun}",
    "this {noun} is {adj}",
    "what a {adj} {noun}",
    "the {noun} was {adj} and {adj2}",
    "honestly the {noun} felt {adj}",
    "we found the {noun} rather {adj}",
    "such a {adj} {noun} overall",
    "my friend says the {noun} is {adj}",
    "that {noun} seems {adj} to me",
    "i {verb} the {noun} and the {noun2}",
)

# Contrast templates mix both polarities in one sentence; {same} is the
# label's own polarity, {other} the opposite one.
_CONTRAST_TEMPLATES = (
    "i wanted a {other} {noun} but this one is {same}",
    "the {noun} looked {other} at first yet turned {same}",
    "the staff was {other} but the {noun} was {same}",
    "critics called it {other} yet i find the {noun} {same}",
)


def make_toy_corpus(seed: int = 7, per_class: int = 300, contrast_share: float = 0.4) -> Corpus:
    """Generate a balanced synthetic sentiment corpus from templates.

    Sentences are unique; each negative sentence carries at least one
    lexicon-negative word, so the whole negative side is attackable.
    """
    rng = random.Random(seed)
    sentences: list[CorpusItem] = []
    for label in (0, 1):
        same_adjs = _NEG_ADJS if label == 0 else _POS_ADJS
        other_adjs = _POS_ADJS if label == 0 else _NEG_ADJS
        verbs = _NEG_VERBS if label == 0 else _POS_VERBS
        n_contrast = int(per_class * contrast_share)
        seen: set[str] = set()
        while len(seen) < per_class:
            if len(seen) < per_class - n_contrast:
                template = rng.choice(_PLAIN_TEMPLATES)
                text = template.format(
                    verb=rng.choice(verbs),
                    noun=rng.choice(_NOUNS),
                    noun2=rng.choice(_NOUNS),
                    adj=rng.choice(same_adjs),
                    adj2=rng.choice(same_adjs),
                )
            else:
                template = rng.choice(_CONTRAST_TEMPLATES)
                text = template.format(
                    noun=rng.choice(_NOUNS),
                    same=rng.choice(same_adjs),
                    other=rng.choice(other_adjs),
                )
            if text not in seen:
                seen.add(text)
                sentences.append(CorpusItem(text=text, label=label))
    rng.shuffle(sentences)
    return Corpus(items=tuple(sentences), source=f"toy(seed={seed})")


def toy_corpus_path() -> Path:
    """Path of the frozen toy corpus CSV shipped with the package."""
    return Path(str(resources.files("zwlab").joinpath("data/toy_sentiment.csv")))


def load_toy_corpus() -> Corpus:
    return load_corpus(toy_corpus_path(), CorpusFormat.LABELED_CSV)


def split_corpus(
    corpus: Corpus,
    seed: int,
    ratios: tuple[float, float, float] = (0.7, 0.1, 0.2),
    stratify: bool = True,
) -> tuple[Corpus, Corpus, Corpus]:
    """Deterministic train/valid/test split, stratified by label by default."""
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("split ratios must sum to 1")
    rng = np.random.default_rng(seed)
    groups: dict[int | None, list[CorpusItem]] = {}
    if stratify and corpus.labeled:
        for item in corpus.items:
            groups.setdefault(item.label, []).append(item)
    else:
        groups[None] = list(corpus.items)
    train_items: list[CorpusItem] = []
    valid_items: list[CorpusItem] = []
    test_items: list[CorpusItem] = []
    for key in sorted(groups, key=lambda k: (k is None, k)):
        members = groups[key]
        order = rng.permutation(len(members))
        shuffled = [members[i] for i in order]
        n = len(shuffled)
        n_train = int(n * ratios[0])
        n_valid = int(n * ratios[1])
        train_items.extend(shuffled[:n_train])
        valid_items.extend(shuffled[n_train : n_train + n_valid])
        test_items.extend(shuffled[n_train + n_valid :])
    src = corpus.source
    return (
        Corpus(items=tuple(train_items), source=src),
        Corpus(items=tuple(valid_items), source=src),
        Corpus(items=tuple(test_items), source=src),
    )


# --- experiment -----------------------------------------------------------

_MATRIX: tuple[tuple[str, Level, OovPolicy], ...] = (
    ("word-unk", Level.WORD, MapToUnk()),
    ("word-discard", Level.WORD, Discard()),
    ("char-unk", Level.CHAR, MapToUnk()),
    ("char-discard", Level.CHAR, Discard()),
)

_EXPERIMENT_PREPROCESS = PreprocessConfig(lowercase=True, strip_social=True)


@dataclass(frozen=True)
class ExperimentReport:
    """Full experiment outcome; ``timings`` stays out of emitted files."""

    seed: int
    corpus_sizes: dict[str, int]
    configurations: tuple[AttackReport, ...]
    negativity: dict[str, ScoreDistribution]
    versions: dict[str, str]
    schema_version: str = SCHEMA_VERSION
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "seed": self.seed,
            "corpus_sizes": dict(self.corpus_sizes),
            "configurations": [c.to_dict() for c in self.configurations],
            "negativity": {label: dist.to_record(label) for label, dist in self.negativity.items()},
            "versions": dict(self.versions),
        }


def run_experiment(
    train_corpus: Corpus,
    valid_corpus: Corpus,
    test_corpus: Corpus,
    lex: SentimentLexicon | None = None,
    seed: int = 0,
    encoding: str = "tfidf",
    train_config: TrainConfig | None = None,
    max_size: int = 2000,
) -> ExperimentReport:
    """Run the full attack evaluation on pre-split labeled corpora.

    Builds the attackable "real" set from negative-label test sentences,
    derives both mask corpora, trains the {word,char} x {unk,discard}
    matrix, and collects accuracy, attack-success, and negativity
    summaries (real, mask1, mask2, sanitized).
    """
    for name, corpus in (("train", train_corpus), ("valid", valid_corpus), ("test", test_corpus)):
        if not corpus.labeled:
            raise ValueError(f"{name} corpus must be labeled")
    lex = lex if lex is not None else starter_lexicon()
    cfg = train_config if train_config is not None else TrainConfig(seed=seed)
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    real = [item.text for item in test_corpus.items if item.label == 0 and can_manipulate(item.text, lex)]
    if not real:
        raise ValueError("no modifiable negative test sentences; cannot build the real corpus")
    mask1_records, _ = poison_corpus(real, MaskKind.MASK1, lex, seed)
    mask2_records, _ = poison_corpus(real, MaskKind.MASK2, lex, seed)
    mask1 = [r.poisoned for r in mask1_records]
    mask2 = [r.poisoned for r in mask2_records]
    sanitized = [strip_invisible(t) for t in mask2]
    timings["poison"] = time.perf_counter() - t0

    reports: list[AttackReport] = []
    train_pairs = train_corpus.pairs()
    valid_pairs = valid_corpus.pairs()
    test_pairs = test_corpus.pairs()
    for label, level, policy in _MATRIX:
        t0 = time.perf_counter()
        spec = build_feature_spec(
            [text for text, _ in train_pairs],
            _EXPERIMENT_PREPROCESS,
            TokenizerSpec(level=level),
            policy,
            encoding=encoding,
            max_size=max_size,
        )
        model = train(train_pairs, valid_pairs, spec, cfg)
        asp_real, asp_mask1, asp_mask2 = attack_success(model, real, mask1, mask2)
        reports.append(
            AttackReport(
                config=f"{label}-{encoding}",
                acc_train=evaluate_accuracy(model, train_pairs),
                acc_valid=evaluate_accuracy(model, valid_pairs),
                acc_test=evaluate_accuracy(model, test_pairs),
                asp_real=asp_real,
                asp_mask1=asp_mask1,
                asp_mask2=asp_mask2,
            )
        )
        timings[label] = time.perf_counter() - t0

    t0 = time.perf_counter()
    negativity = {
        "real": summarize([sentence_negativity(t, lex) for t in real]),
        "mask1": summarize([sentence_negativity(t, lex) for t in mask1]),
        "mask2": summarize([sentence_negativity(t, lex) for t in mask2]),
        "sanitized": summarize([sentence_negativity(t, lex) for t in sanitized]),
    }
    timings["negativity"] = time.perf_counter() - t0

    return ExperimentReport(
        seed=seed,
        corpus_sizes={
            "train": len(train_corpus),
            "valid": len(valid_corpus),
            "test": len(test_corpus),
            "real": len(real),
            "mask1": len(mask1),
            "mask2": len(mask2),
        },
        configurations=tuple(reports),
        negativity=negativity,
        versions={
            "zwlab": __version__,
            "python": ".".join(map(str, sys.version_info[:3])),
            "numpy": np.__version__,
        },
        timings=timings,
    )


def emit_report(report: ExperimentReport, out_dir: str | Path, overwrite: bool = False) -> list[Path]:
    """Write report.json, the ACC/ASP table, and per-corpus distributions.

    Refuses to clobber existing report files unless ``overwrite`` is
    set. Output bytes depend only on the report contents, never on the
    wall clock, so identical runs emit identical files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / REPORT_FILE, out / TABLE_FILE, out / DISTRIBUTIONS_FILE]
    if not overwrite:
        existing = [p for p in paths if p.exists()]
        if existing:
            raise FileExistsError(f"refusing to overwrite {existing[0]} (pass overwrite to replace)")

    paths[0].write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")

    table = io.StringIO()
    writer = csv.writer(table, lineterminator="\n")
    writer.writerow(["config", "acc_train", "acc_valid", "acc_test", "asp_real", "asp_mask1", "asp_mask2"])
    for conf in report.configurations:
        writer.writerow(
            [
                conf.config,
                repr(conf.acc_train),
                repr(conf.acc_valid),
                repr(conf.acc_test),
                repr(conf.asp_real),
                repr(conf.asp_mask1),
                repr(conf.asp_mask2),
            ]
        )
    paths[1].write_text(table.getvalue(), encoding="utf-8")

    dists = io.StringIO()
    writer = csv.writer(dists, lineterminator="\n")
    writer.writerow(["corpus", "value"])
    for label in sorted(report.negativity):
        for value in report.negativity[label].values:
            writer.writerow([label, repr(value)])
    paths[2].write_text(dists.getvalue(), encoding="utf-8")
    return paths

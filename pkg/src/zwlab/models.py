"""Desk-scale linear classifiers over pipeline encodings.

A logistic model trained by per-sample stochastic gradient descent with
early stopping on validation accuracy. The feature spec bundles every
pipeline stage (preprocess config, tokenizer, OOV policy, encoding,
vocabulary) so prediction runs end to end from raw text -- which is
exactly the surface an injection attack reaches.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DataError
from .pipeline import (
    Count,
    Discard,
    IdfStats,
    Level,
    MapToUnk,
    OovPolicy,
    Placeholders,
    PreprocessConfig,
    TfIdf,
    TokenizerSpec,
    Vocabulary,
    build_vocab,
    encode,
    fit_idf,
    index,
    preprocess,
    tokenize,
)

MODEL_FORMAT = "zwlab-model"
MODEL_FORMAT_VERSION = "1"

LabeledText = tuple[str, int]


@dataclass(frozen=True, eq=False)
class FeatureSpec:
    """Everything needed to turn raw text into a fixed-length feature vector."""

    preprocess: PreprocessConfig
    tokenizer: TokenizerSpec
    policy: OovPolicy
    encoding: Count | TfIdf
    vocab: Vocabulary

    def __post_init__(self) -> None:
        if not isinstance(self.encoding, (Count, TfIdf)):
            raise ValueError("linear models need fixed-length Count or TfIdf features")

    @property
    def dim(self) -> int:
        return self.vocab.size


def featurize(spec: FeatureSpec, text: str) -> np.ndarray:
    """Run the full pipeline on one text and return a float feature vector."""
    cleaned = preprocess(text, spec.preprocess)
    tokens = tokenize(cleaned, spec.tokenizer, spec.preprocess)
    ids = index(tokens, spec.vocab, spec.policy)
    return np.asarray(encode(ids, spec.vocab, spec.encoding), dtype=np.float64)


def build_feature_spec(
    train_texts: Iterable[str],
    preprocess_cfg: PreprocessConfig,
    tokenizer: TokenizerSpec,
    policy: OovPolicy,
    encoding: str = "tfidf",
    max_size: int = 25_000,
) -> FeatureSpec:
    """Build vocabulary (and idf, for tfidf) from training texts only."""
    token_lists = [tokenize(preprocess(t, preprocess_cfg), tokenizer, preprocess_cfg) for t in train_texts]
    vocab = build_vocab(token_lists, max_size, policy)
    if encoding == "count":
        kind: Count | TfIdf = Count()
    elif encoding == "tfidf":
        docs = [index(tokens, vocab, policy) for tokens in token_lists]
        kind = TfIdf(stats=fit_idf(docs, vocab))
    else:
        raise ValueError(f"unknown encoding {encoding!r} (expected 'count' or 'tfidf')")
    return FeatureSpec(preprocess=preprocess_cfg, tokenizer=tokenizer, policy=policy, encoding=kind, vocab=vocab)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    l2: float = 1e-4
    max_epochs: int = 100
    patience: int = 5
    seed: int = 0


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Trained logistic classifier; immutable, safe for concurrent prediction."""

    weights: np.ndarray
    bias: float
    spec: FeatureSpec
    epochs_trained: int = 0


class Prediction(NamedTuple):
    label: int
    score: float


@dataclass(frozen=True)
class AttackReport:
    """Accuracy and attack-success percentages for one configuration."""

    config: str
    acc_train: float
    acc_valid: float
    acc_test: float
    asp_real: float
    asp_mask1: float
    asp_mask2: float

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "acc_train": self.acc_train,
            "acc_valid": self.acc_valid,
            "acc_test": self.acc_test,
            "asp_real": self.asp_real,
            "asp_mask1": self.asp_mask1,
            "asp_mask2": self.asp_mask2,
        }


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def logistic_loss_and_grad(
    weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float
) -> tuple[float, np.ndarray, float]:
    """Mean logistic loss with L2 penalty on weights, and its gradient.

    Numerically stable via logaddexp; the bias is not regularized.
    """
    z = X @ weights + bias
    loss = float(np.mean(y * np.logaddexp(0.0, -z) + (1.0 - y) * np.logaddexp(0.0, z)))
    loss += 0.5 * l2 * float(weights @ weights)
    p = np.empty_like(z)
    pos = z >= 0
    p[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    p[~pos] = ez / (1.0 + ez)
    residual = p - y
    grad_w = X.T @ residual / len(y) + l2 * weights
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def _featurize_corpus(spec: FeatureSpec, corpus: Sequence[LabeledText]) -> tuple[np.ndarray, np.ndarray]:
    X = np.stack([featurize(spec, text) for text, _ in corpus])
    y = np.array([label for _, label in corpus], dtype=np.float64)
    return X, y


def train(
    train_corpus: Sequence[LabeledText],
    valid_corpus: Sequence[LabeledText],
    spec: FeatureSpec,
    cfg: TrainConfig = TrainConfig(),
) -> LinearModel:
    """Per-sample SGD on the logistic loss with validation early stopping.

    Stops after ``patience`` epochs without a validation-accuracy
    improvement (or at max_epochs) and returns the best snapshot. A
    fixed seed fixes the shuffling order, so retraining is bit-identical.
    """
    if not train_corpus or not valid_corpus:
        raise ValueError("training and validation corpora must be non-empty")
    train_labels = {label for _, label in train_corpus}
    if len(train_labels) < 2:
        raise ValueError("training corpus contains a single class")
    if not train_labels <= {0, 1}:
        raise ValueError(f"labels must be 0/1, got {sorted(train_labels)}")

    X, y = _featurize_corpus(spec, train_corpus)
    Xv, yv = _featurize_corpus(spec, valid_corpus)
    if X.shape[1] != spec.dim:
        raise ValueError(f"feature dimension {X.shape[1]} != vocabulary size {spec.dim}")

    rng = np.random.default_rng(cfg.seed)
    w = np.zeros(spec.dim, dtype=np.float64)
    b = 0.0
    best_w, best_b = w.copy(), b
    best_acc = -1.0
    stale = 0
    epochs_run = 0
    for epoch in range(cfg.max_epochs):
        epochs_run = epoch + 1
        for i in rng.permutation(len(y)):
            residual = _sigmoid(float(X[i] @ w + b)) - y[i]
            w -= cfg.learning_rate * (residual * X[i] + cfg.l2 * w)
            b -= cfg.learning_rate * residual
        valid_acc = float(np.mean(((Xv @ w + b) >= 0) == yv.astype(bool)))
        if valid_acc > best_acc:
            best_acc = valid_acc
            best_w, best_b = w.copy(), b
            stale = 0
        else:
            stale += 1
            if stale >= cfg.patience:
                break
    return LinearModel(weights=best_w, bias=best_b, spec=spec, epochs_trained=epochs_run)


def predict(model: LinearModel, text: str) -> Prediction:
    """Score one text; label is positive iff the score reaches 0.5."""
    vec = featurize(model.spec, text)
    if vec.shape[0] != model.weights.shape[0]:
        raise ValueError(f"feature dimension {vec.shape[0]} != model dimension {model.weights.shape[0]}")
    score = _sigmoid(float(vec @ model.weights + model.bias))
    return Prediction(label=int(score >= 0.5), score=score)


def evaluate_accuracy(model: LinearModel, corpus: Sequence[LabeledText]) -> float:
    """Percentage of correct predictions on a labeled corpus."""
    if not corpus:
        raise ValueError("cannot evaluate on an empty corpus")
    correct = sum(predict(model, text).label == label for text, label in corpus)
    return 100.0 * correct / len(corpus)


def attack_success(
    model: LinearModel,
    real: Sequence[str],
    mask1: Sequence[str],
    mask2: Sequence[str],
) -> tuple[float, float, float]:
    """Attack-success percentage (share predicted positive) per corpus.

    The three corpora must be aligned item-for-item; naturally
    misclassified sentences count toward every percentage.
    """
    if not (len(real) == len(mask1) == len(mask2)):
        raise ValueError(f"corpus sizes differ: {len(real)}, {len(mask1)}, {len(mask2)}")
    if not real:
        raise ValueError("cannot evaluate attack success on empty corpora")

    def _asp(texts: Sequence[str]) -> float:
        positive = sum(predict(model, t).label == 1 for t in texts)
        return 100.0 * positive / len(texts)

    return _asp(real), _asp(mask1), _asp(mask2)


def _policy_tag(policy: OovPolicy) -> str:
    if isinstance(policy, MapToUnk):
        return "unk"
    if isinstance(policy, Discard):
        return "discard"
    return f"placeholders:{policy.k}"


def _policy_from_tag(tag: str) -> OovPolicy:
    if tag == "unk":
        return MapToUnk()
    if tag == "discard":
        return Discard()
    if tag.startswith("placeholders:"):
        return Placeholders(k=int(tag.split(":", 1)[1]))
    raise DataError(f"unknown policy tag {tag!r}")


def save_model(model: LinearModel, path: str | Path) -> None:
    """Write the versioned flat model file: header, weight lines, bias last."""
    spec = model.spec
    lines = [
        f"{MODEL_FORMAT}\t{MODEL_FORMAT_VERSION}",
        f"level\t{spec.tokenizer.level.value}",
        f"ngram_lo\t{spec.tokenizer.ngram_lo}",
        f"ngram_hi\t{spec.tokenizer.ngram_hi}",
        f"policy\t{_policy_tag(spec.policy)}",
        f"encoding\t{'count' if isinstance(spec.encoding, Count) else 'tfidf'}",
        f"lowercase\t{int(spec.preprocess.lowercase)}",
        f"strip_social\t{int(spec.preprocess.strip_social)}",
        f"remove_stopwords\t{int(spec.preprocess.remove_stopwords)}",
        f"apply_stem\t{int(spec.preprocess.apply_stem)}",
        f"max_size\t{spec.vocab.max_size}",
        f"epochs_trained\t{model.epochs_trained}",
    ]
    from .pipeline import _escape  # shared token escaping

    for i in range(spec.vocab.size):
        lines.append(f"vocab\t{_escape(spec.vocab.token_of(i))}\t{i}")
    if isinstance(spec.encoding, TfIdf) and spec.encoding.stats is not None:
        lines.append(f"idf_docs\t{spec.encoding.stats.n_docs}")
        for i, value in enumerate(spec.encoding.stats.weights):
            lines.append(f"idf\t{i}\t{float(value)!r}")
    lines.append("end_header")
    for i, weight in enumerate(model.weights):
        lines.append(f"{i}\t{float(weight)!r}")
    lines.append(f"bias\t{float(model.bias)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> LinearModel:
    """Read a model file written by ``save_model``."""
    from .pipeline import _unescape

    lines = Path(path).read_text("utf-8").splitlines()
    if not lines or not lines[0].startswith(MODEL_FORMAT + "\t"):
        raise DataError(f"{path}: not a {MODEL_FORMAT} file")
    header: dict[str, str] = {}
    vocab_entries: list[tuple[str, int]] = []
    idf_values: dict[int, float] = {}
    body_start = None
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "end_header":
            body_start = lineno
            break
        fields = line.split("\t")
        if fields[0] == "vocab":
            if len(fields) != 3:
                raise DataError(f"{path}: line {lineno}: malformed vocab line")
            vocab_entries.append((_unescape(fields[1]), int(fields[2])))
        elif fields[0] == "idf":
            idf_values[int(fields[1])] = float(fields[2])
        elif len(fields) == 2:
            header[fields[0]] = fields[1]
        else:
            raise DataError(f"{path}: line {lineno}: malformed header line")
    if body_start is None:
        raise DataError(f"{path}: missing end_header")

    try:
        policy = _policy_from_tag(header["policy"])
        tokenizer = TokenizerSpec(
            level=Level(header["level"]),
            ngram_lo=int(header["ngram_lo"]),
            ngram_hi=int(header["ngram_hi"]),
        )
        preprocess_cfg = PreprocessConfig(
            lowercase=bool(int(header["lowercase"])),
            strip_social=bool(int(header["strip_social"])),
            remove_stopwords=bool(int(header["remove_stopwords"])),
            apply_stem=bool(int(header["apply_stem"])),
        )
        max_size = int(header["max_size"])
    except KeyError as exc:
        raise DataError(f"{path}: missing header field {exc}") from exc

    n_special = 1 if isinstance(policy, MapToUnk) else policy.k if isinstance(policy, Placeholders) else 0
    content = vocab_entries[: len(vocab_entries) - n_special] if n_special else vocab_entries
    index_of = {token: i for token, i in content}
    next_id = len(index_of)
    vocab = Vocabulary(
        index_of=index_of,
        max_size=max_size,
        unk_id=next_id if isinstance(policy, MapToUnk) else None,
        placeholder_ids=tuple(range(next_id, next_id + policy.k)) if isinstance(policy, Placeholders) else (),
    )
    if header["encoding"] == "count":
        encoding: Count | TfIdf = Count()
    else:
        weights_vec = np.array([idf_values[i] for i in range(vocab.size)], dtype=np.float64)
        encoding = TfIdf(stats=IdfStats(weights=weights_vec, n_docs=int(header.get("idf_docs", 0))))
    spec = FeatureSpec(
        preprocess=preprocess_cfg, tokenizer=tokenizer, policy=policy, encoding=encoding, vocab=vocab
    )

    weights = np.zeros(vocab.size, dtype=np.float64)
    bias = None
    for lineno, line in enumerate(lines[body_start:], start=body_start + 1):
        if not line:
            continue
        left, _, right = line.partition("\t")
        if left == "bias":
            bias = float(right)
        else:
            try:
                weights[int(left)] = float(right)
            except (ValueError, IndexError):
                raise DataError(f"{path}: line {lineno}: malformed weight line") from None
    if bias is None:
        raise DataError(f"{path}: missing bias line")
    return LinearModel(
        weights=weights, bias=bias, spec=spec, epochs_trained=int(header.get("epochs_trained", 0))
    )

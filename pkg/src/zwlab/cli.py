"""Command-line interface.

Each pipeline stage is independently scriptable: inject, sanitize,
detect, tokenize, encode, train, predict, attack-eval, metrics, and the
end-to-end experiment. Commands that use randomness require --seed.

Exit codes: 0 success, 1 usage error, 2 data error, 3 detections
present (detect, and sanitize in reject mode).
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .attack import MaskKind, manipulate
from .codepoints import zero_width_set
from .defense import GuardPolicy, Rejection, detect as detect_text, guard
from .errors import DataError, StateError
from .harness import (
    CorpusFormat,
    emit_report,
    load_corpus,
    load_toy_corpus,
    run_experiment,
    split_corpus,
)
from .lexicon import load_lexicon_file, starter_lexicon
from .metrics import asp as asp_metric, bleu4, jaccard, summarize
from .models import (
    TrainConfig,
    attack_success,
    build_feature_spec,
    evaluate_accuracy,
    load_model,
    predict as predict_text,
    save_model,
    train as train_model,
)
from .pipeline import (
    Count,
    Dense,
    Discard,
    Level,
    MapToUnk,
    OneHot,
    Placeholders,
    PreprocessConfig,
    TfIdf,
    TokenizerSpec,
    build_vocab,
    encode as encode_ids,
    fit_idf,
    index as index_tokens,
    preprocess,
    save_vocab,
    tokenize as tokenize_text,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DETECTIONS = 3


def _read_lines(source: str) -> list[str]:
    if source == "-":
        return sys.stdin.read().splitlines()
    try:
        return Path(source).read_text(encoding="utf-8").splitlines()
    except UnicodeDecodeError as exc:
        raise DataError(f"{source}: not valid UTF-8 ({exc})") from exc


def _lexicon(path: str | None):
    return load_lexicon_file(path) if path else starter_lexicon()


def _policy(name: str, k: int):
    if name == "unk":
        return MapToUnk()
    if name == "discard":
        return Discard()
    return Placeholders(k=k)


def _preprocess_options(fn):
    fn = click.option("--lowercase/--no-lowercase", default=False, show_default=True)(fn)
    fn = click.option("--strip-social", is_flag=True, help="Remove hashtags, mentions, URLs.")(fn)
    fn = click.option("--remove-stopwords", is_flag=True)(fn)
    fn = click.option("--stem", "apply_stem", is_flag=True, help="Stem word tokens.")(fn)
    return fn


def _tokenizer_options(fn):
    fn = click.option("--level", type=click.Choice(["word", "char"]), default="word", show_default=True)(fn)
    fn = click.option("--ngram-lo", type=int, default=1, show_default=True)(fn)
    fn = click.option("--ngram-hi", type=int, default=1, show_default=True)(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="zwlab")
def cli() -> None:
    """Invisible-codepoint injection attacks, defenses, and measurements."""


@cli.command()
@click.argument("source", default="-")
@click.option("--mask", type=click.Choice(["mask1", "mask2"]), required=True)
@click.option("--seed", type=int, required=True, help="Base seed; line i uses seed+i.")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--zwsp-only", is_flag=True, help="Inject only U+200B instead of the full set.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Also write one manipulation record per line as JSON lines.")
def inject(source, mask, seed, lexicon_path, zwsp_only, report_path) -> int:
    """Poison negative words of each input line; write poisoned lines."""
    lex = _lexicon(lexicon_path)
    charset = ("​",) if zwsp_only else None
    records = []
    for i, line in enumerate(_read_lines(source)):
        record = manipulate(line, MaskKind(mask), lex, seed + i, charset=charset)
        records.append(record)
        click.echo(record.poisoned)
    if report_path:
        Path(report_path).write_text(
            "\n".join(r.to_json() for r in records) + "\n", encoding="utf-8"
        )
    return EXIT_OK


@cli.command()
@click.argument("source", default="-")
@click.option("--policy", type=click.Choice(["strip", "reject"]), default="strip", show_default=True)
def sanitize(source, policy) -> int:
    """Filter input lines: strip invisible codepoints, or reject per line."""
    detections = False
    for lineno, line in enumerate(_read_lines(source), start=1):
        outcome = guard(line, GuardPolicy(policy))
        if isinstance(outcome, Rejection):
            detections = True
            click.echo(json.dumps({"line": lineno, "rejected": True, **outcome.report.to_dict()}))
        else:
            click.echo(outcome)
    return EXIT_DETECTIONS if detections else EXIT_OK


@cli.command(name="detect")
@click.argument("source", default="-")
@click.option("--list-set", is_flag=True, help="Print the zero-width set as U+XXXX lines and exit.")
def detect_cmd(source, list_set) -> int:
    """Report every invisible codepoint per input line."""
    if list_set:
        for line in zero_width_set().audit_lines():
            click.echo(line)
        return EXIT_OK
    detections = False
    for lineno, line in enumerate(_read_lines(source), start=1):
        report = detect_text(line)
        detections = detections or report.flagged
        click.echo(json.dumps({"line": lineno, **report.to_dict()}))
    return EXIT_DETECTIONS if detections else EXIT_OK


@cli.command(name="tokenize")
@click.argument("source", default="-")
@_tokenizer_options
@_preprocess_options
def tokenize_cmd(source, level, ngram_lo, ngram_hi, lowercase, strip_social, remove_stopwords, apply_stem) -> int:
    """Tokenize each input line; one JSON token array per line."""
    spec = TokenizerSpec(level=Level(level), ngram_lo=ngram_lo, ngram_hi=ngram_hi)
    cfg = PreprocessConfig(
        lowercase=lowercase,
        strip_social=strip_social,
        remove_stopwords=remove_stopwords,
        apply_stem=apply_stem,
    )
    for line in _read_lines(source):
        tokens = tokenize_text(preprocess(line, cfg), spec, cfg)
        click.echo(json.dumps(tokens, ensure_ascii=False))
    return EXIT_OK


@cli.command(name="encode")
@click.argument("source", default="-")
@click.option("--fit", "fit_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Corpus (one text per line) used to build the vocabulary and idf.")
@click.option("--kind", type=click.Choice(["count", "tfidf", "onehot", "dense"]), default="count",
              show_default=True)
@click.option("--policy", "policy_name", type=click.Choice(["unk", "discard", "placeholders"]),
              default="unk", show_default=True)
@click.option("--placeholders-k", type=int, default=2, show_default=True)
@click.option("--max-size", type=int, default=25000, show_default=True)
@click.option("--dense-dim", type=int, default=8, show_default=True)
@click.option("--dense-seed", type=int, default=0, show_default=True)
@click.option("--save-vocab", "vocab_out", type=click.Path(dir_okay=False), default=None)
@_tokenizer_options
@_preprocess_options
def encode_cmd(source, fit_path, kind, policy_name, placeholders_k, max_size, dense_dim, dense_seed,
               vocab_out, level, ngram_lo, ngram_hi, lowercase, strip_social, remove_stopwords,
               apply_stem) -> int:
    """Encode each input line against a vocabulary fitted on --fit."""
    spec = TokenizerSpec(level=Level(level), ngram_lo=ngram_lo, ngram_hi=ngram_hi)
    cfg = PreprocessConfig(
        lowercase=lowercase,
        strip_social=strip_social,
        remove_stopwords=remove_stopwords,
        apply_stem=apply_stem,
    )
    policy = _policy(policy_name, placeholders_k)
    fit_tokens = [tokenize_text(preprocess(t, cfg), spec, cfg) for t in _read_lines(fit_path)]
    vocab = build_vocab(fit_tokens, max_size, policy)
    if vocab_out:
        save_vocab(vocab, vocab_out)
    if kind == "count":
        encoder = Count()
    elif kind == "tfidf":
        encoder = TfIdf(stats=fit_idf([index_tokens(t, vocab, policy) for t in fit_tokens], vocab))
    elif kind == "onehot":
        encoder = OneHot()
    else:
        encoder = Dense(dim=dense_dim, seed=dense_seed)
    for line in _read_lines(source):
        ids = index_tokens(tokenize_text(preprocess(line, cfg), spec, cfg), vocab, policy)
        click.echo(json.dumps(encode_ids(ids, vocab, encoder).tolist()))
    return EXIT_OK


@cli.command(name="train")
@click.option("--train", "train_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--valid", "valid_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "model_path", type=click.Path(dir_okay=False), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--kind", type=click.Choice(["count", "tfidf"]), default="tfidf", show_default=True)
@click.option("--policy", "policy_name", type=click.Choice(["unk", "discard", "placeholders"]),
              default="unk", show_default=True)
@click.option("--placeholders-k", type=int, default=2, show_default=True)
@click.option("--max-size", type=int, default=25000, show_default=True)
@click.option("--lr", type=float, default=0.1, show_default=True)
@click.option("--l2", type=float, default=1e-4, show_default=True)
@click.option("--max-epochs", type=int, default=100, show_default=True)
@click.option("--patience", type=int, default=5, show_default=True)
@_tokenizer_options
@_preprocess_options
def train_cmd(train_path, valid_path, model_path, seed, kind, policy_name, placeholders_k, max_size,
              lr, l2, max_epochs, patience, level, ngram_lo, ngram_hi, lowercase, strip_social,
              remove_stopwords, apply_stem) -> int:
    """Train a linear classifier on labeled CSV corpora and save it."""
    train_corpus = load_corpus(train_path, CorpusFormat.LABELED_CSV)
    valid_corpus = load_corpus(valid_path, CorpusFormat.LABELED_CSV)
    cfg = PreprocessConfig(
        lowercase=lowercase,
        strip_social=strip_social,
        remove_stopwords=remove_stopwords,
        apply_stem=apply_stem,
    )
    spec = build_feature_spec(
        train_corpus.texts(),
        cfg,
        TokenizerSpec(level=Level(level), ngram_lo=ngram_lo, ngram_hi=ngram_hi),
        _policy(policy_name, placeholders_k),
        encoding=kind,
        max_size=max_size,
    )
    model = train_model(
        train_corpus.pairs(),
        valid_corpus.pairs(),
        spec,
        TrainConfig(learning_rate=lr, l2=l2, max_epochs=max_epochs, patience=patience, seed=seed),
    )
    save_model(model, model_path)
    click.echo(
        f"trained {model.epochs_trained} epochs; "
        f"acc(train)={evaluate_accuracy(model, train_corpus.pairs()):.2f} "
        f"acc(valid)={evaluate_accuracy(model, valid_corpus.pairs()):.2f}",
        err=True,
    )
    return EXIT_OK


@cli.command(name="predict")
@click.argument("source", default="-")
@click.option("--model", "model_path", type=click.Path(exists=True, dir_okay=False), required=True)
def predict_cmd(source, model_path) -> int:
    """Predict label and score for each input line (tab separated)."""
    model = load_model(model_path)
    for line in _read_lines(source):
        prediction = predict_text(model, line)
        click.echo(f"{prediction.label}\t{prediction.score!r}")
    return EXIT_OK


@cli.command(name="attack-eval")
@click.option("--model", "model_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--real", "real_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--mask1", "mask1_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--mask2", "mask2_path", type=click.Path(exists=True, dir_okay=False), required=True)
def attack_eval_cmd(model_path, real_path, mask1_path, mask2_path) -> int:
    """Attack-success percentages of a model over aligned real/mask corpora."""
    model = load_model(model_path)
    asp_real, asp_mask1, asp_mask2 = attack_success(
        model,
        _read_lines(real_path),
        _read_lines(mask1_path),
        _read_lines(mask2_path),
    )
    click.echo(json.dumps({"asp_real": asp_real, "asp_mask1": asp_mask1, "asp_mask2": asp_mask2}))
    return EXIT_OK


@cli.group(name="metrics")
def metrics_group() -> None:
    """Similarity and evaluation metrics."""


@metrics_group.command(name="jaccard")
@click.option("--a", "set_a", required=True, help="Whitespace-separated items of set A.")
@click.option("--b", "set_b", required=True, help="Whitespace-separated items of set B.")
def jaccard_cmd(set_a, set_b) -> int:
    click.echo(repr(jaccard(set_a.split(), set_b.split())))
    return EXIT_OK


@metrics_group.command(name="bleu")
@click.option("--reference", required=True)
@click.option("--candidate", required=True)
def bleu_cmd(reference, candidate) -> int:
    click.echo(repr(bleu4(reference, candidate)))
    return EXIT_OK


@metrics_group.command(name="asp")
@click.argument("source", default="-")
def asp_cmd(source) -> int:
    """ASP of a file of 0/1 labels, one per line."""
    labels = [int(line.strip()) for line in _read_lines(source) if line.strip()]
    click.echo(repr(asp_metric(labels)))
    return EXIT_OK


@metrics_group.command(name="summarize")
@click.argument("source", default="-")
@click.option("--label", default="values", show_default=True)
def summarize_cmd(source, label) -> int:
    """Distribution summary of a file of reals, one per line."""
    values = [float(line.strip()) for line in _read_lines(source) if line.strip()]
    click.echo(json.dumps(summarize(values).to_record(label)))
    return EXIT_OK


@cli.command(name="experiment")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Labeled CSV corpus; defaults to the shipped toy corpus.")
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--overwrite", is_flag=True)
@click.option("--encoding", type=click.Choice(["count", "tfidf"]), default="tfidf", show_default=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--max-size", type=int, default=2000, show_default=True)
@click.option("--lr", type=float, default=0.1, show_default=True)
@click.option("--l2", type=float, default=1e-4, show_default=True)
@click.option("--max-epochs", type=int, default=100, show_default=True)
@click.option("--patience", type=int, default=5, show_default=True)
def experiment_cmd(corpus_path, seed, out_dir, overwrite, encoding, lexicon_path, max_size,
                   lr, l2, max_epochs, patience) -> int:
    """Run the full attack evaluation and write report files."""
    corpus = (
        load_corpus(corpus_path, CorpusFormat.LABELED_CSV) if corpus_path else load_toy_corpus()
    )
    train_corpus, valid_corpus, test_corpus = split_corpus(corpus, seed)
    report = run_experiment(
        train_corpus,
        valid_corpus,
        test_corpus,
        lex=_lexicon(lexicon_path),
        seed=seed,
        encoding=encoding,
        train_config=TrainConfig(learning_rate=lr, l2=l2, max_epochs=max_epochs, patience=patience, seed=seed),
        max_size=max_size,
    )
    paths = emit_report(report, out_dir, overwrite=overwrite)
    for stage, seconds in report.timings.items():
        click.echo(f"timing {stage}: {seconds:.3f}s", err=True)
    for conf in report.configurations:
        click.echo(
            f"{conf.config}: acc(test)={conf.acc_test:.2f} "
            f"asp real/mask1/mask2 = {conf.asp_real:.2f}/{conf.asp_mask1:.2f}/{conf.asp_mask2:.2f}",
            err=True,
        )
    click.echo("\n".join(str(p) for p in paths))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Entry point with the package's exit-code contract."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except (DataError, StateError, FileExistsError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DATA
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

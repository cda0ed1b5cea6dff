import json

import pytest

from zwlab.codepoints import strip_invisible
from zwlab.errors import DataError
from zwlab.harness import (
    Corpus,
    CorpusFormat,
    CorpusItem,
    emit_report,
    load_corpus,
    load_toy_corpus,
    make_toy_corpus,
    run_experiment,
    save_corpus,
    split_corpus,
)
from zwlab.lexicon import starter_lexicon, word_is_negative
from zwlab.lexicon import token_core


class TestCorpus:
    def test_mixed_labels_rejected(self):
        with pytest.raises(ValueError):
            Corpus(items=(CorpusItem("a", 1), CorpusItem("b", None)))

    def test_lines_format(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("hi\nyo\n", encoding="utf-8")
        corpus = load_corpus(path, CorpusFormat.LINES)
        assert len(corpus) == 2
        assert not corpus.labeled
        assert corpus.texts() == ["hi", "yo"]

    def test_labeled_csv(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text('1,"I love it"\n0,awful\n', encoding="utf-8")
        corpus = load_corpus(path, CorpusFormat.LABELED_CSV)
        assert corpus.labeled
        assert corpus.pairs() == [("I love it", 1), ("awful", 0)]

    def test_quoted_comma_text(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text('0,"bad, very bad"\n', encoding="utf-8")
        corpus = load_corpus(path, CorpusFormat.LABELED_CSV)
        assert corpus.items[0].text == "bad, very bad"

    def test_unknown_label_names_line(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text("2,bad\n", encoding="utf-8")
        with pytest.raises(DataError, match="line 1"):
            load_corpus(path, CorpusFormat.LABELED_CSV)

    def test_wrong_field_count_names_line(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text("1,ok\n0,bad,extra\n", encoding="utf-8")
        with pytest.raises(DataError, match="line 2"):
            load_corpus(path, CorpusFormat.LABELED_CSV)

    def test_invalid_utf8(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_bytes(b"\xff\xfe nonsense")
        with pytest.raises(DataError, match="UTF-8"):
            load_corpus(path, CorpusFormat.LINES)

    def test_save_round_trip(self, tmp_path):
        corpus = Corpus(items=(CorpusItem("a, b", 1), CorpusItem("c", 0)))
        path = tmp_path / "out.csv"
        save_corpus(corpus, path)
        assert load_corpus(path, CorpusFormat.LABELED_CSV).pairs() == corpus.pairs()


class TestToyCorpus:
    def test_shipped_corpus_matches_generator(self):
        shipped = load_toy_corpus()
        regenerated = make_toy_corpus(seed=7, per_class=300)
        assert shipped.pairs() == regenerated.pairs()

    def test_balanced_and_unique(self):
        corpus = load_toy_corpus()
        labels = [item.label for item in corpus.items]
        assert labels.count(0) == labels.count(1) == 300
        texts = corpus.texts()
        assert len(set(texts)) == len(texts)

    def test_every_negative_sentence_is_attackable(self):
        lex = starter_lexicon()
        corpus = load_toy_corpus()
        for item in corpus.items:
            if item.label == 0:
                assert any(
                    word_is_negative(token_core(t), lex) for t in item.text.split()
                ), item.text


class TestSplit:
    def test_ratios_and_stratification(self):
        corpus = load_toy_corpus()
        train, valid, test = split_corpus(corpus, seed=1)
        assert len(train) == 420 and len(valid) == 60 and len(test) == 120
        for part in (train, valid, test):
            labels = [i.label for i in part.items]
            assert labels.count(0) == labels.count(1)

    def test_deterministic_and_disjoint(self):
        corpus = load_toy_corpus()
        a = split_corpus(corpus, seed=9)
        b = split_corpus(corpus, seed=9)
        assert [p.texts() for p in a] == [p.texts() for p in b]
        train, valid, test = a
        assert set(train.texts()).isdisjoint(valid.texts())
        assert set(train.texts()).isdisjoint(test.texts())
        assert set(valid.texts()).isdisjoint(test.texts())

    def test_bad_ratios_rejected(self):
        with pytest.raises(ValueError):
            split_corpus(load_toy_corpus(), seed=0, ratios=(0.5, 0.2, 0.2))


class TestExperiment:
    def test_four_configurations_once_each(self, experiment):
        report, _ = experiment
        names = [c.config for c in report.configurations]
        assert len(names) == 4 and len(set(names)) == 4

    def test_mask_corpora_aligned(self, toy_splits):
        # Alignment lives inside run_experiment; check the documented
        # consequence: sizes match and every mask sentence strips to real.
        train, valid, test = toy_splits
        result = run_experiment(train, valid, test, seed=5)
        sizes = result.corpus_sizes
        assert sizes["real"] == sizes["mask1"] == sizes["mask2"] > 0

    def test_sanitized_distribution_equals_real(self, experiment):
        report, _ = experiment
        assert report.negativity["sanitized"].values == report.negativity["real"].values

    def test_percentages_in_range(self, experiment):
        report, _ = experiment
        for conf in report.configurations:
            for value in conf.to_dict().values():
                if isinstance(value, float):
                    assert 0.0 <= value <= 100.0

    def test_determinism(self, toy_splits, experiment):
        report, _ = experiment
        train, valid, test = toy_splits
        again = run_experiment(train, valid, test, seed=42)
        assert again.to_dict() == report.to_dict()

    def test_unlabeled_corpus_rejected(self):
        plain = Corpus(items=(CorpusItem("x"),))
        with pytest.raises(ValueError):
            run_experiment(plain, plain, plain, seed=0)


class TestEmit:
    def test_files_written(self, experiment, tmp_path):
        report, _ = experiment
        paths = emit_report(report, tmp_path / "out")
        assert [p.name for p in paths] == ["report.json", "results_table.csv", "distributions.csv"]
        payload = json.loads(paths[0].read_text("utf-8"))
        assert payload["schema_version"] == "1"
        assert "timings" not in payload  # wall-clock data would break determinism

    def test_table_has_one_row_per_configuration(self, experiment, tmp_path):
        report, _ = experiment
        paths = emit_report(report, tmp_path / "out")
        rows = paths[1].read_text("utf-8").splitlines()
        assert len(rows) == 1 + len(report.configurations)

    def test_refuses_overwrite_without_flag(self, experiment, tmp_path):
        report, _ = experiment
        emit_report(report, tmp_path / "out")
        with pytest.raises(FileExistsError):
            emit_report(report, tmp_path / "out")
        emit_report(report, tmp_path / "out", overwrite=True)

    def test_distributions_cover_all_corpora(self, experiment, tmp_path):
        report, _ = experiment
        paths = emit_report(report, tmp_path / "out")
        body = paths[2].read_text("utf-8")
        for label in ("real", "mask1", "mask2", "sanitized"):
            assert f"{label}," in body


def test_masked_corpora_strip_back_to_real(toy_splits):
    from zwlab.attack import MaskKind, poison_corpus

    lex = starter_lexicon()
    _, _, test = toy_splits
    real = [i.text for i in test.items if i.label == 0]
    records, _ = poison_corpus(real, MaskKind.MASK2, lex, seed=0)
    for record in records:
        assert strip_invisible(record.poisoned) == record.original

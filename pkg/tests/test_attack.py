import random

import pytest
from hypothesis import given, settings, strategies as st

from zwlab.attack import MaskKind, inject_word, manipulate, poison_corpus
from zwlab.codepoints import is_invisible, strip_invisible, zero_width_set


def rng(seed=0):
    return random.Random(seed)


class TestInjectWord:
    def test_mask1_inserts_one_at_the_middle(self):
        out = inject_word("hate", MaskKind.MASK1, rng())
        assert len(out) == 5
        assert out[:2] == "ha" and out[3:] == "te"
        assert is_invisible(out[2])

    def test_mask2_saturates_every_gap(self):
        out = inject_word("hate", MaskKind.MASK2, rng())
        assert len(out) == 9
        assert out[1::2] == "hate"
        assert all(is_invisible(ch) for ch in out[0::2])

    def test_single_char_word_mask1(self):
        # floor(1/2) == 0: the insert lands before the character.
        out = inject_word("a", MaskKind.MASK1, rng())
        assert len(out) == 2
        assert is_invisible(out[0]) and out[1] == "a"

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            inject_word("", MaskKind.MASK1, rng())

    def test_double_injection_rejected(self):
        poisoned = inject_word("hate", MaskKind.MASK1, rng())
        with pytest.raises(ValueError):
            inject_word(poisoned, MaskKind.MASK1, rng())

    def test_charset_restriction(self):
        out = inject_word("hate", MaskKind.MASK2, rng(), charset=("​",))
        assert set(out[0::2]) == {"​"}

    def test_charset_must_be_invisible(self):
        with pytest.raises(ValueError):
            inject_word("hate", MaskKind.MASK1, rng(), charset=("x",))

    def test_deterministic_given_seed(self):
        assert inject_word("hate", MaskKind.MASK2, rng(7)) == inject_word(
            "hate", MaskKind.MASK2, rng(7)
        )


class TestManipulate:
    def test_single_target_mask1(self, lex):
        record = manipulate("I hate this album", MaskKind.MASK1, lex, seed=3)
        assert strip_invisible(record.poisoned) == "I hate this album"
        assert [t.token_index for t in record.targets] == [1]
        assert record.targets[0].original_token == "hate"
        assert strip_invisible(record.targets[0].poisoned_token) == "hate"
        # Everything around the target is untouched.
        assert record.poisoned.startswith("I ") and record.poisoned.endswith(" this album")

    def test_no_negative_words_means_no_change(self, lex):
        record = manipulate("this album", MaskKind.MASK1, lex, seed=0)
        assert record.poisoned == "this album"
        assert record.targets == ()
        assert not record.modified

    def test_repeated_targets_all_poisoned(self, lex):
        record = manipulate("I hate hate", MaskKind.MASK2, lex, seed=7)
        assert strip_invisible(record.poisoned) == "I hate hate"
        assert len(record.targets) == 2

    def test_punctuation_stays_outside_the_injection(self, lex):
        record = manipulate('so awful, truly "awful"!', MaskKind.MASK2, lex, seed=1)
        assert strip_invisible(record.poisoned) == 'so awful, truly "awful"!'
        first, second = record.targets
        assert first.original_token == "awful,"
        assert first.poisoned_token.endswith(",")
        assert second.original_token == '"awful"!'
        assert second.poisoned_token.startswith('"')
        assert second.poisoned_token.endswith('"!')

    def test_whitespace_layout_preserved(self, lex):
        raw = "  I  hate\tthis   album "
        record = manipulate(raw, MaskKind.MASK1, lex, seed=5)
        assert strip_invisible(record.poisoned) == raw

    def test_already_poisoned_input_rejected(self, lex):
        with pytest.raises(ValueError):
            manipulate("I ha​te this", MaskKind.MASK1, lex, seed=0)

    def test_determinism(self, lex):
        a = manipulate("I hate this awful album", MaskKind.MASK2, lex, seed=11)
        b = manipulate("I hate this awful album", MaskKind.MASK2, lex, seed=11)
        assert a == b

    def test_mask1_insert_count_equals_target_count(self, lex):
        record = manipulate("hate sad kill", MaskKind.MASK1, lex, seed=2)
        injected = sum(1 for ch in record.poisoned if is_invisible(ch))
        assert injected == len(record.targets) == 3

    def test_mask2_insert_count_is_sum_of_lengths_plus_one(self, lex):
        record = manipulate("I hate this awful album", MaskKind.MASK2, lex, seed=2)
        injected = sum(1 for ch in record.poisoned if is_invisible(ch))
        expected = sum(len(t.original_token) + 1 for t in record.targets)
        assert injected == expected

    def test_record_serializes(self, lex):
        record = manipulate("I hate this", MaskKind.MASK1, lex, seed=0)
        data = record.to_dict()
        assert data["mask"] == "mask1"
        assert data["targets"][0]["original"] == "hate"


class TestPoisonCorpus:
    def test_discard_keeps_only_modified(self, lex):
        corpus = ["I hate this", "all is well", "nothing here"]
        records, stats = poison_corpus(corpus, MaskKind.MASK1, lex, seed=0)
        assert len(records) == 1
        assert stats.total == 3 and stats.modified == 1 and stats.discarded == 2
        assert stats.unmodified == 0

    def test_keep_unmodified(self, lex):
        corpus = ["I hate this", "all is well"]
        records, stats = poison_corpus(corpus, MaskKind.MASK1, lex, seed=0, discard_unmodified=False)
        assert len(records) == 2
        assert stats.discarded == 0 and stats.unmodified == 1

    def test_empty_corpus(self, lex):
        records, stats = poison_corpus([], MaskKind.MASK2, lex, seed=0)
        assert records == []
        assert stats == type(stats)(total=0, modified=0, unmodified=0, discarded=0)

    def test_same_seed_same_output(self, lex):
        corpus = ["I hate this", "so awful and sad"]
        first, _ = poison_corpus(corpus, MaskKind.MASK2, lex, seed=42)
        second, _ = poison_corpus(corpus, MaskKind.MASK2, lex, seed=42)
        assert [r.poisoned for r in first] == [r.poisoned for r in second]

    def test_error_carries_sentence_index(self, lex):
        with pytest.raises(ValueError, match="sentence 1"):
            poison_corpus(["fine", "bad​ input"], MaskKind.MASK1, lex, seed=0)


@settings(max_examples=60)
@given(
    text=st.text(
        alphabet=st.characters(blacklist_characters=[chr(c) for c in zero_width_set()]),
        max_size=80,
    ),
    mask=st.sampled_from([MaskKind.MASK1, MaskKind.MASK2]),
    seed=st.integers(min_value=0, max_value=2**16),
)
def test_round_trip_property(text, mask, seed, starter):
    record = manipulate(text, mask, starter, seed)
    assert strip_invisible(record.poisoned) == text
    assert (record.poisoned == text) == (record.targets == ())

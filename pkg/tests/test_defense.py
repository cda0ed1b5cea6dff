import pytest
from hypothesis import given, settings, strategies as st

from zwlab.attack import MaskKind, manipulate
from zwlab.codepoints import zero_width_set
from zwlab.defense import GuardPolicy, Rejection, detect, discrepancy_probe, guard
from zwlab.lexicon import sentence_negativity


class TestDetect:
    def test_clean_text(self):
        report = detect("hate")
        assert not report.flagged
        assert report.hits == ()

    def test_single_hit_with_index(self):
        report = detect("ha​te")
        assert report.flagged
        assert len(report.hits) == 1
        assert report.hits[0].index == 2
        assert report.hits[0].codepoint == "​"

    def test_mask2_output_is_always_flagged(self, lex):
        record = manipulate("I hate this", MaskKind.MASK2, lex, seed=4)
        assert record.targets
        assert detect(record.poisoned).flagged

    def test_indices_strictly_increasing(self):
        report = detect("​a‌b⁠")
        indices = [h.index for h in report.hits]
        assert indices == sorted(indices) and len(set(indices)) == len(indices)

    def test_legitimate_unicode_not_flagged(self):
        assert not detect("café 日本語 🙂 señor").flagged

    def test_serialization(self):
        data = detect("x​y").to_dict()
        assert data == {"flagged": True, "hits": [{"index": 1, "codepoint": "U+200B"}]}


class TestGuard:
    def test_reject_passes_clean_text(self):
        assert guard("hate", GuardPolicy.REJECT) == "hate"

    def test_reject_returns_typed_rejection(self):
        outcome = guard("ha​te", GuardPolicy.REJECT)
        assert isinstance(outcome, Rejection)
        assert len(outcome.report.hits) == 1

    def test_strip_sanitizes(self):
        assert guard("ha​te", GuardPolicy.STRIP) == "hate"

    def test_strip_then_manipulate_is_identity(self, lex):
        original = "I hate this awful album"
        record = manipulate(original, MaskKind.MASK2, lex, seed=9)
        assert guard(record.poisoned, GuardPolicy.STRIP) == original


class TestDiscrepancyProbe:
    def test_clean_text_never_flags(self):
        assert not discrepancy_probe(len, "clean text", tolerance=0.0)

    def test_flags_a_lexicon_scorer_under_attack(self, lex):
        record = manipulate("I hate this album", MaskKind.MASK1, lex, seed=0)
        score = lambda t: sentence_negativity(t, lex)
        assert discrepancy_probe(score, record.poisoned, tolerance=0.0)

    def test_char_count_scorer_with_tolerance(self, lex):
        record = manipulate("I hate this album", MaskKind.MASK1, lex, seed=0)
        # Mask1 adds exactly one codepoint; a length scorer diverges by 1.
        assert discrepancy_probe(len, record.poisoned, tolerance=0.5)
        assert not discrepancy_probe(len, record.poisoned, tolerance=1.0)

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            discrepancy_probe(len, "x", tolerance=-1.0)

    def test_invariant_scorer_never_flags(self, lex):
        # A scorer that sanitizes internally cannot diverge.
        from zwlab.codepoints import strip_invisible

        record = manipulate("I hate this", MaskKind.MASK2, lex, seed=1)
        score = lambda t: float(len(strip_invisible(t)))
        assert not discrepancy_probe(score, record.poisoned, tolerance=0.0)


class TestProbeWithModels:
    FIXTURE = [
        ("the service was awful but the cake was delicious", 0),
        ("the service was awful and the cake was awful", 0),
        ("the service was delicious and the cake was delicious", 1),
        ("the service was delicious but the cake was plain", 1),
    ]

    def _model(self, policy, level):
        from zwlab.models import TrainConfig, build_feature_spec, train
        from zwlab.pipeline import Level, PreprocessConfig, TokenizerSpec

        spec = build_feature_spec(
            [t for t, _ in self.FIXTURE],
            PreprocessConfig(lowercase=True),
            TokenizerSpec(level=level),
            policy,
            encoding="count",
            max_size=100,
        )
        return train(self.FIXTURE, self.FIXTURE, spec, TrainConfig(seed=3))

    def test_char_discard_model_never_diverges(self, starter):
        from zwlab.models import predict
        from zwlab.pipeline import Discard, Level

        model = self._model(Discard(), Level.CHAR)
        score = lambda t: predict(model, t).score
        for text, _ in self.FIXTURE:
            record = manipulate(text, MaskKind.MASK2, starter, seed=2)
            assert not discrepancy_probe(score, record.poisoned, tolerance=0.0)

    def test_word_unk_model_diverges_on_flipping_fixture(self, starter):
        from zwlab.models import predict
        from zwlab.pipeline import Level, MapToUnk

        model = self._model(MapToUnk(), Level.WORD)
        score = lambda t: predict(model, t).score
        record = manipulate(self.FIXTURE[0][0], MaskKind.MASK2, starter, seed=21)
        assert discrepancy_probe(score, record.poisoned, tolerance=0.0)
        # The divergence is a genuine label flip, not score jitter.
        assert predict(model, record.poisoned).label != predict(model, self.FIXTURE[0][0]).label


@settings(max_examples=60)
@given(
    text=st.text(
        alphabet=st.characters(blacklist_characters=[chr(c) for c in zero_width_set()]),
        max_size=60,
    ),
    mask=st.sampled_from([MaskKind.MASK1, MaskKind.MASK2]),
    seed=st.integers(min_value=0, max_value=2**16),
)
def test_detector_soundness_and_completeness(text, mask, seed, starter):
    # Clean text: no false positives. Targeted text: always flagged.
    assert not detect(text).flagged
    record = manipulate(text, mask, starter, seed)
    if record.targets:
        assert detect(record.poisoned).flagged

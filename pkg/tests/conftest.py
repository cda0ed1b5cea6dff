import random
import time

import pytest

from zwlab import SentimentLexicon, starter_lexicon
from zwlab.harness import load_toy_corpus, run_experiment, split_corpus


@pytest.fixture(scope="session")
def lex():
    """Small hand-built lexicon with known valences."""
    return SentimentLexicon(
        entries={
            "hate": -0.8,
            "awful": -0.7,
            "kill": -0.85,
            "sad": -0.5,
            "love": 0.8,
            "good": 0.5,
        },
        negative_threshold=-0.05,
    )


@pytest.fixture(scope="session")
def starter():
    return starter_lexicon()


@pytest.fixture(scope="session")
def toy_splits():
    corpus = load_toy_corpus()
    return split_corpus(corpus, seed=42)


@pytest.fixture(scope="session")
def experiment(toy_splits):
    """Shipped toy experiment at seed 42, with its wall-clock runtime."""
    train, valid, test = toy_splits
    start = time.perf_counter()
    report = run_experiment(train, valid, test, seed=42)
    elapsed = time.perf_counter() - start
    return report, elapsed


# Word pools for the random sentence generator: plain ASCII, accented and
# non-Latin text, emoji, and words the starter lexicon marks negative.
_PLAIN_WORDS = (
    "the", "quick", "brown", "fox", "jumps", "over", "lazy", "dog", "album",
    "music", "city", "river", "sky", "stone", "coffee", "train",
)
_UNICODE_WORDS = (
    "café", "naïve", "über", "señor", "œuvre", "日本語", "привет", "Ωμέγα",
    "🙂", "🔥", "東京", "smörgåsbord",
)
_NEGATIVE_WORDS = ("hate", "awful", "terrible", "kill", "nasty", "dreadful", "vile")
_PUNCT = ("", "", "", ".", ",", "!", "?")


def make_sentence(rng: random.Random) -> str:
    """Random mixed ASCII/Unicode sentence; roughly half contain negative words."""
    length = rng.randint(3, 12)
    words = []
    for _ in range(length):
        roll = rng.random()
        if roll < 0.25:
            word = rng.choice(_NEGATIVE_WORDS)
        elif roll < 0.45:
            word = rng.choice(_UNICODE_WORDS)
        else:
            word = rng.choice(_PLAIN_WORDS)
        words.append(word + rng.choice(_PUNCT))
    return " ".join(words)

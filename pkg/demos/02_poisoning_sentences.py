"""Injecting invisible codepoints into the negative words of a sentence.

Run: python demos/02_poisoning_sentences.py
"""
import random

from zwlab import (
    MaskKind,
    inject_word,
    manipulate,
    poison_corpus,
    starter_lexicon,
    strip_invisible,
    word_is_negative,
)

lex = starter_lexicon()

# The lexicon decides which words are targets.
for word in ("hate", "album", "awful", "ha​te"):
    print(f"word_is_negative({word!r}) = {word_is_negative(word, lex)}")

# Single-word injection under both masks. mask1 drops one codepoint into
# the middle; mask2 saturates every gap including both ends.
rng = random.Random(0)
print()
print("mask1:", repr(inject_word("hate", MaskKind.MASK1, rng)))
print("mask2:", repr(inject_word("hate", MaskKind.MASK2, rng)))

# Whole-sentence manipulation preserves everything except the targets.
sentence = "Honestly, I hate this awful album!"
record = manipulate(sentence, MaskKind.MASK2, lex, seed=7)
print()
print("original:", record.original)
print("poisoned:", repr(record.poisoned))
print("looks like:", record.poisoned)
print("targets:")
for target in record.targets:
    print(f"  token {target.token_index}: {target.original_token!r} -> {target.poisoned_token!r}")
print("strips back exactly:", strip_invisible(record.poisoned) == sentence)

# Corpus-level poisoning with per-sentence seeds; unmodifiable sentences
# are discarded by default, mirroring an attack that skips neutral text.
corpus = [
    "I hate this album",
    "a lovely day outside",
    "what a terrible, terrible movie",
]
records, stats = poison_corpus(corpus, MaskKind.MASK1, lex, seed=42)
print()
print(f"poisoned {stats.modified} of {stats.total} sentences ({stats.discarded} discarded):")
for rec in records:
    print("  ", repr(rec.poisoned))

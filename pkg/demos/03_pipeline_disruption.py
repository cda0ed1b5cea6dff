"""How the injection lands on each indexing strategy.

A word-level pipeline sees poisoned words as out-of-vocabulary; what
happens next depends entirely on the OOV policy. A char-level pipeline
that discards unknown characters is immune. Run:

    python demos/03_pipeline_disruption.py
"""
from zwlab import (
    Count,
    Discard,
    Level,
    MapToUnk,
    OneHot,
    Placeholders,
    TokenizerSpec,
    build_vocab,
    encode,
    index,
    tokenize,
)

WORD = TokenizerSpec(level=Level.WORD)
CHAR = TokenizerSpec(level=Level.CHAR)

clean = "I hate this album"
poisoned = "I h​a​t​e this album"


def render(vocab, ids):
    return [vocab.token_of(i) for i in ids]


# --- word level -------------------------------------------------------------
train_tokens = [tokenize(clean, WORD)]
print("word tokens of poisoned text:", tokenize(poisoned, WORD))

unk_vocab = build_vocab(train_tokens, 10, MapToUnk())
ids = index(tokenize(poisoned, WORD), unk_vocab, MapToUnk())
print("map-to-unk :", render(unk_vocab, ids))

discard_vocab = build_vocab(train_tokens, 10, Discard())
ids = index(tokenize(poisoned, WORD), discard_vocab, Discard())
print("discard    :", render(discard_vocab, ids), "(the hateful word vanishes)")

ph_vocab = build_vocab([["meets"]], 10, Placeholders(k=2))
ids = index(["Liam", "meets", "Noel"], ph_vocab, Placeholders(k=2))
print("placeholder:", render(ph_vocab, ids), "(distinct unknowns keep distinct slots)")

# --- char level -------------------------------------------------------------
char_vocab_unk = build_vocab([tokenize(clean, CHAR)], 100, MapToUnk())
ids = index(tokenize("h​a​t​e", CHAR), char_vocab_unk, MapToUnk())
print()
print("char + unk    :", render(char_vocab_unk, ids), "(noise between every letter)")

char_vocab_discard = build_vocab([tokenize(clean, CHAR)], 100, Discard())
clean_ids = index(tokenize(clean, CHAR), char_vocab_discard, Discard())
poisoned_ids = index(tokenize(poisoned, CHAR), char_vocab_discard, Discard())
print("char + discard: poisoned ids == clean ids?", poisoned_ids == clean_ids)

# --- encodings --------------------------------------------------------------
hello_vocab = build_vocab([["hello", "there"], ["hello", "hello"]], 10, Discard())
s1 = index(["hello", "there"], hello_vocab, Discard())
s2 = index(["hello", "hello"], hello_vocab, Discard())
print()
print("count  'hello there':", encode(s1, hello_vocab, Count()).tolist())
print("count  'hello hello':", encode(s2, hello_vocab, Count()).tolist())
print("onehot 'hello there':", encode(s1, hello_vocab, OneHot()).tolist())

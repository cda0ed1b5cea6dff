"""Input validation: detect, strip or reject, and the discrepancy probe.

Run: python demos/04_defense_and_probe.py
"""
from zwlab import (
    GuardPolicy,
    MaskKind,
    Rejection,
    detect,
    discrepancy_probe,
    guard,
    manipulate,
    sentence_negativity,
    starter_lexicon,
)

lex = starter_lexicon()
record = manipulate("I hate this awful album", MaskKind.MASK2, lex, seed=5)

# Detection reports every invisible codepoint with its index.
report = detect(record.poisoned)
print(f"flagged: {report.flagged}, {len(report.hits)} hits")
print("first three:", [(h.index, f"U+{ord(h.codepoint):04X}") for h in report.hits[:3]])

# Legitimate Unicode passes: the filter targets the curated set only.
print("emoji/CJK flagged?", detect("I liked the café 🙂 東京").flagged)

# Guard in both modes.
print()
print("strip :", repr(guard(record.poisoned, GuardPolicy.STRIP)))
outcome = guard(record.poisoned, GuardPolicy.REJECT)
print("reject:", f"Rejection with {len(outcome.report.hits)} hits" if isinstance(outcome, Rejection) else outcome)
print("reject on clean text:", guard("all is well", GuardPolicy.REJECT))

# The probe: score raw and sanitized input, flag any divergence. Here the
# negativity scorer collapses on the poisoned text, so the probe fires.
score = lambda text: sentence_negativity(text, lex)
print()
print("negativity raw      :", round(score(record.poisoned), 4))
print("negativity sanitized:", round(score(record.original), 4))
print("probe fires:", discrepancy_probe(score, record.poisoned, tolerance=0.0))
print("probe on clean text:", discrepancy_probe(score, record.original, tolerance=0.0))

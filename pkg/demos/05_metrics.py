"""Similarity and evaluation metrics used to quantify attack impact.

Run: python demos/05_metrics.py
"""
from zwlab import asp, bleu4, jaccard, summarize

# Jaccard similarity compares detected-attribute sets before/after an
# attack: 1.0 means the attack changed nothing.
before = {"anger", "sadness", "fear"}
after = {"sadness"}
print("jaccard identical :", jaccard(before, before))
print("jaccard after atk :", round(jaccard(before, after), 4))
print("jaccard both empty:", jaccard(set(), set()))

# Sentence BLEU-4 compares two translations of the same input; a perfect
# match scores 1.0 and any missing 4-gram without smoothing can zero it.
reference = "do not do that again"
print()
print("bleu identical:", bleu4(reference, reference))
print("bleu shortened:", round(bleu4(reference, "do not do that"), 4))
print("bleu unrelated:", bleu4(reference, "completely different words here"))

# ASP: the share of sentences a classifier calls positive. On an
# all-negative corpus this is the attack's success rate directly.
predictions = [0, 0, 0, 1, 1, 0, 0, 0]
print()
print("asp:", asp(predictions), "%")

# Distribution summaries back the before/after violin-style comparisons.
negativity_real = [0.35, 0.41, 0.28, 0.35, 0.52, 0.19, 0.35]
negativity_masked = [0.0, 0.0, 0.0, 0.0, 0.0, 0.02, 0.0]
print()
print("real  :", summarize(negativity_real).to_record("real"))
print("masked:", summarize(negativity_masked).to_record("masked"))

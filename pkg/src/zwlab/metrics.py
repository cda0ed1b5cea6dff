"""Evaluation measures: Jaccard similarity, sentence BLEU-4, ASP, summaries.

The BLEU here is the cumulative sentence-level variant: geometric mean
of modified n-gram precisions up to 4 over whitespace word tokens,
times a brevity penalty, with no smoothing -- a single empty precision
zeroes the score. These choices are pinned so results are
bit-reproducible.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


def jaccard(a: Iterable, b: Iterable) -> float:
    """|A intersect B| / |A union B|; two empty sets count as identical (1.0)."""
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu4(reference: str, candidate: str) -> float:
    """Cumulative sentence BLEU up to 4-grams, unsmoothed.

    Tokens are whitespace-split words. Candidates shorter than four
    tokens use n-gram orders up to their own length. Both texts empty
    -> 1.0; exactly one empty -> 0.0.
    """
    ref = reference.split()
    cand = candidate.split()
    if not ref and not cand:
        return 1.0
    if not ref or not cand:
        return 0.0
    max_n = min(4, len(cand))
    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand_counts = _ngram_counts(cand, n)
        ref_counts = _ngram_counts(ref, n)
        clipped = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
        total = sum(cand_counts.values())
        if clipped == 0:
            return 0.0
        log_sum += math.log(clipped / total)
    brevity = min(1.0, math.exp(1.0 - len(ref) / len(cand)))
    return brevity * math.exp(log_sum / max_n)


def asp(predictions: Sequence[int]) -> float:
    """Percentage of positive labels; errors on an empty sequence."""
    if not predictions:
        raise ValueError("cannot compute attack success on an empty prediction list")
    positive = sum(1 for p in predictions if int(p) == 1)
    return 100.0 * positive / len(predictions)


def _median(sorted_values: Sequence[float]) -> float:
    n = len(sorted_values)
    mid = n // 2
    if n % 2:
        return float(sorted_values[mid])
    return (sorted_values[mid - 1] + sorted_values[mid]) / 2.0


@dataclass(frozen=True)
class ScoreDistribution:
    """A score sample with its five-number-ish summary.

    Median is the midpoint of the sorted values (mean of the two middle
    elements for even length); quartiles apply the same rule to the
    halves below/above the median position.
    """

    values: tuple[float, ...]
    median: float
    q1: float
    q3: float
    minimum: float
    maximum: float

    @property
    def n(self) -> int:
        return len(self.values)

    def to_record(self, label: str) -> dict:
        return {
            "label": label,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "min": self.minimum,
            "max": self.maximum,
            "n": self.n,
        }


def summarize(values: Sequence[float]) -> ScoreDistribution:
    """Summarize a non-empty sequence of reals into a ScoreDistribution."""
    if not values:
        raise ValueError("cannot summarize an empty sequence")
    ordered = sorted(float(v) for v in values)
    n = len(ordered)
    median = _median(ordered)
    if n == 1:
        q1 = q3 = median
    else:
        half = n // 2
        lower = ordered[:half]
        upper = ordered[half + 1 :] if n % 2 else ordered[half:]
        q1 = _median(lower)
        q3 = _median(upper)
    return ScoreDistribution(
        values=tuple(ordered),
        median=median,
        q1=q1,
        q3=q3,
        minimum=ordered[0],
        maximum=ordered[-1],
    )

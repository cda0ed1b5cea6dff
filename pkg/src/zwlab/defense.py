"""Input validation against invisible-codepoint injection.

Detection scope is exactly the curated zero-width set, never "all
non-ASCII": legitimate Unicode text (accents, CJK, emoji) must pass
untouched. The guard either strips the offending codepoints or rejects
the whole input; the discrepancy probe compares an arbitrary scorer on
raw vs sanitized text to reveal an attack in progress.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

from .codepoints import format_codepoint, is_invisible, strip_invisible


class DetectionHit(NamedTuple):
    """One invisible codepoint found in the input."""

    index: int
    codepoint: str


@dataclass(frozen=True)
class DetectionReport:
    """Every invisible-codepoint occurrence, in index order."""

    hits: tuple[DetectionHit, ...]

    @property
    def flagged(self) -> bool:
        return bool(self.hits)

    def to_dict(self) -> dict:
        return {
            "flagged": self.flagged,
            "hits": [{"index": h.index, "codepoint": format_codepoint(h.codepoint)} for h in self.hits],
        }


@dataclass(frozen=True)
class Rejection:
    """Typed rejection outcome returned by ``guard`` in reject mode."""

    report: DetectionReport


class GuardPolicy(str, Enum):
    REJECT = "reject"
    STRIP = "strip"


def detect(text: str) -> DetectionReport:
    """Report every zero-width-set codepoint with its codepoint index."""
    hits = tuple(DetectionHit(i, ch) for i, ch in enumerate(text) if is_invisible(ch))
    return DetectionReport(hits=hits)


def guard(text: str, policy: GuardPolicy) -> str | Rejection:
    """Apply the input-validation filter.

    STRIP returns the text with invisible codepoints removed. REJECT
    returns clean text unchanged and a Rejection (carrying the
    detection report) otherwise.
    """
    if policy is GuardPolicy.STRIP:
        return strip_invisible(text)
    if policy is GuardPolicy.REJECT:
        report = detect(text)
        if report.flagged:
            return Rejection(report=report)
        return text
    raise ValueError(f"unknown policy {policy!r}")


def discrepancy_probe(score: Callable[[str], float], text: str, tolerance: float = 0.0) -> bool:
    """True iff a scorer disagrees between raw and sanitized text.

    ``score`` must be deterministic. A divergence beyond ``tolerance``
    is evidence that invisible codepoints are steering the scorer.
    """
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    return abs(score(text) - score(strip_invisible(text))) > tolerance

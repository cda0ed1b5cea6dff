"""Curated set of invisible Unicode codepoints and the primitives built on it.

These characters render with zero advance width (or are pure layout
controls with no glyph), so text containing them is indistinguishable
from clean text to a reader while being different to any program that
compares codepoints. Everything else in this package -- injection,
detection, stripping -- is defined relative to this one set.

The list is curated by hand and versioned; membership never depends on
the Unicode database of the running interpreter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

# Version of the curated list below. Bump when members change.
CHARSET_VERSION = "1"

# Ordered by codepoint. Every entry is a format/control character that
# produces no visible glyph in mainstream rendering.
_MEMBERS: tuple[int, ...] = (
    0x00AD,  # SOFT HYPHEN (invisible except at a hyphenation break)
    0x034F,  # COMBINING GRAPHEME JOINER
    0x061C,  # ARABIC LETTER MARK
    0x180E,  # MONGOLIAN VOWEL SEPARATOR
    0x200B,  # ZERO WIDTH SPACE
    0x200C,  # ZERO WIDTH NON-JOINER
    0x200D,  # ZERO WIDTH JOINER
    0x200E,  # LEFT-TO-RIGHT MARK
    0x200F,  # RIGHT-TO-LEFT MARK
    0x202A,  # LEFT-TO-RIGHT EMBEDDING
    0x202B,  # RIGHT-TO-LEFT EMBEDDING
    0x202C,  # POP DIRECTIONAL FORMATTING
    0x202D,  # LEFT-TO-RIGHT OVERRIDE
    0x202E,  # RIGHT-TO-LEFT OVERRIDE
    0x2060,  # WORD JOINER
    0x2061,  # FUNCTION APPLICATION
    0x2062,  # INVISIBLE TIMES
    0x2063,  # INVISIBLE SEPARATOR
    0x2064,  # INVISIBLE PLUS
    0x2066,  # LEFT-TO-RIGHT ISOLATE
    0x2067,  # RIGHT-TO-LEFT ISOLATE
    0x2068,  # FIRST STRONG ISOLATE
    0x2069,  # POP DIRECTIONAL ISOLATE
    0xFEFF,  # ZERO WIDTH NO-BREAK SPACE (BOM)
)

_MEMBER_SET: frozenset[int] = frozenset(_MEMBERS)
_STRIP_TABLE: dict[int, None] = {cp: None for cp in _MEMBERS}

ZERO_WIDTH_SPACE = "​"
ZERO_WIDTH_JOINER = "‌"


@dataclass(frozen=True)
class ZeroWidthSet:
    """The fixed, ordered set of invisible codepoints.

    Membership is deterministic and total over all Unicode scalar
    values; no member is ASCII.
    """

    members: tuple[int, ...] = field(default=_MEMBERS)
    version: str = CHARSET_VERSION

    def __contains__(self, cp: int | str) -> bool:
        return _as_codepoint(cp) in _MEMBER_SET

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def chars(self) -> tuple[str, ...]:
        """Members as single-character strings, in codepoint order."""
        return tuple(chr(cp) for cp in self.members)

    def audit_lines(self) -> list[str]:
        """One ``U+XXXX`` line per member, for export and review."""
        return [format_codepoint(cp) for cp in self.members]

    def write_audit_file(self, path: str | Path) -> None:
        """Write the set as a text file of ``U+XXXX`` lines."""
        Path(path).write_text("\n".join(self.audit_lines()) + "\n", encoding="utf-8")


_SET = ZeroWidthSet()


def zero_width_set() -> ZeroWidthSet:
    """Return the fixed curated set; the same value on every call."""
    return _SET


def _as_codepoint(cp: int | str) -> int:
    if isinstance(cp, str):
        if len(cp) != 1:
            raise ValueError(f"expected a single codepoint, got {len(cp)} characters")
        return ord(cp)
    return cp


def is_invisible(cp: int | str) -> bool:
    """True iff the codepoint belongs to the zero-width set.

    Accepts either a single-character string or an integer scalar value.
    """
    return _as_codepoint(cp) in _MEMBER_SET


def contains_invisible(text: str) -> bool:
    """True iff any codepoint of the text belongs to the zero-width set."""
    return any(ord(ch) in _MEMBER_SET for ch in text)


def strip_invisible(text: str) -> str:
    """Remove every zero-width-set codepoint, preserving all others in order.

    Idempotent; identity on clean text.
    """
    return text.translate(_STRIP_TABLE)


def format_codepoint(cp: int | str) -> str:
    """Render a codepoint as ``U+XXXX`` (at least four hex digits)."""
    return f"U+{_as_codepoint(cp):04X}"

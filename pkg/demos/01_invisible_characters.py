"""The invisible codepoint set and the primitives built on it.

Run: python demos/01_invisible_characters.py
"""
import unicodedata

from zwlab import is_invisible, strip_invisible, zero_width_set

zws = zero_width_set()

# The curated set: 24 format/control codepoints that render with no
# visible glyph. U+200B (zero width space) and U+200C are the classics.
print(f"set version {zws.version}, {len(zws)} codepoints:")
for line, cp in zip(zws.audit_lines(), zws.members):
    print(f"  {line}  {unicodedata.name(chr(cp), '<unnamed>')}")

# Two strings that print identically but compare unequal.
clean = "hate"
poisoned = "ha​te"
print()
print(f"clean    = {clean!r}  ({len(clean)} codepoints)")
print(f"poisoned = {poisoned!r}  ({len(poisoned)} codepoints)")
print(f"rendered the same? -> {clean} vs {poisoned}")
print("equal to a program?", clean == poisoned)

# Membership queries work on characters or integer scalars.
print()
print("is_invisible('\\u200b'):", is_invisible("​"))
print("is_invisible('a')      :", is_invisible("a"))
print("is_invisible(0x2060)   :", is_invisible(0x2060))

# Stripping is the exact inverse of any injection: order preserved,
# idempotent, identity on clean text.
print()
print("strip_invisible(poisoned):", repr(strip_invisible(poisoned)))
print("round trip restores clean:", strip_invisible(poisoned) == clean)

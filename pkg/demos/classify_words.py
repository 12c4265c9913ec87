"""
Surfaces from one glued polygon
===============================

Read an edge word around a single polygon (lowercase along the arrow,
uppercase against it), trace the corner identifications, and name the
surface. Free letters (appearing once) leave boundary circles.
"""
from loopsurf import classify, parse

WORDS = [
    ("aA", "a 2-gon zipped shut"),
    ("abAB", "the square gluing both edge pairs straight"),
    ("abab", "both pairs glued with a flip"),
    ("abaB", "one straight pair, one flipped"),
    ("abABcdCD", "two handles"),
    ("baca", "one flipped pair, two free edges"),
    ("bacA", "one straight pair, two free edges"),
    ("ab", "nothing glued at all"),
]

print(f"{'word':10s} {'chi':>4s} {'orientable':>11s} {'boundary':>9s} "
      f"{'genus':>6s}  name")
for text, note in WORDS:
    c = classify(parse(text))
    print(f"{text:10s} {c.euler_char:4d} {str(c.orientable):>11s} "
          f"{c.boundary_count:9d} {c.genus:6d}  {c.name:18s} ({note})")

"""Fundamental-polygon edge words and their surface classification.

A word lists the edge labels read around a single polygon: lowercase means
the edge is traversed along its arrow, uppercase against it ("abAB" is
a b a^-1 b^-1). Labels occurring twice are glued; labels occurring once are
free boundary edges.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EdgeWord:
    """Ordered (label, exponent) letters; each label occurs at most twice."""

    letters: tuple

    def __len__(self):
        return len(self.letters)

    def text(self):
        return "".join(l if e > 0 else l.upper() for l, e in self.letters)


@dataclass(frozen=True)
class SurfaceClass:
    """Classification result.

    ``genus`` counts handles for orientable surfaces and crosscaps
    otherwise; for surfaces with boundary it refers to the capped-off
    closed surface.
    """

    euler_char: int
    orientable: bool
    boundary_count: int
    genus: int
    name: str

    def to_json(self):
        return {"euler_char": self.euler_char, "orientable": self.orientable,
                "boundary_count": self.boundary_count, "genus": self.genus,
                "name": self.name}


def parse(text):
    """Parse a word: lowercase = +1, uppercase = -1, whitespace ignored."""
    letters = []
    for ch in text:
        if ch.isspace():
            continue
        if not ("a" <= ch <= "z" or "A" <= ch <= "Z"):
            raise ValueError(f"illegal character {ch!r}")
        letters.append((ch.lower(), 1 if ch.islower() else -1))
    if not letters:
        raise ValueError("empty word")
    counts = {}
    for label, _ in letters:
        counts[label] = counts.get(label, 0) + 1
    for label, k in counts.items():
        if k > 2:
            raise ValueError(f"label '{label}' appears {k} times")
    return EdgeWord(letters=tuple(letters))


def _occurrences(word):
    occ = {}
    for k, (label, e) in enumerate(word.letters):
        occ.setdefault(label, []).append((k, e))
    return occ


def _corner_of_endpoint(side, exp, which, n):
    """Polygon corner carrying the given label endpoint of a side.

    Side k runs from corner k to corner k+1; exponent +1 means the side is
    traversed from the label's start to its end.
    """
    if which == "start":
        return side if exp > 0 else (side + 1) % n
    return (side + 1) % n if exp > 0 else side


def _endpoint_of_corner(side, exp, corner, n):
    if corner == side:  # tail of the side
        return "start" if exp > 0 else "end"
    return "end" if exp > 0 else "start"


def _chain_to_free_side(corner, cross, word, partner, n):
    """Rotate around the vertex at ``corner``, crossing glued sides starting
    with ``cross``, until a free side is reached. Returns (side, end) with
    end 0 at the side's tail corner, 1 at its head."""
    letters = word.letters
    for _ in range(2 * n + 1):
        if partner[cross] is None:
            return (cross, 0 if corner == cross else 1)
        other = partner[cross]
        which = _endpoint_of_corner(cross, letters[cross][1], corner, n)
        corner = _corner_of_endpoint(other, letters[other][1], which, n)
        cross = (corner - 1) % n if other == corner else corner
    raise AssertionError("vertex star walk did not terminate")


def _boundary_count(word, partner, n):
    free = [k for k in range(n) if partner[k] is None]
    if not free:
        return 0
    chain = {}
    for s in free:
        chain[(s, 0)] = _chain_to_free_side(s, (s - 1) % n, word, partner, n)
        chain[(s, 1)] = _chain_to_free_side((s + 1) % n, (s + 1) % n, word, partner, n)
    loops = 0
    visited = set()
    for start in sorted(chain):
        if start in visited:
            continue
        loops += 1
        cur = start
        while cur not in visited:
            visited.add(cur)
            nxt = chain[cur]
            visited.add(nxt)
            cur = (nxt[0], 1 - nxt[1])  # continue along the free side
    return loops


def classify(word):
    """Surface of the single polygon whose boundary reads the word.

    V counts corner classes traced through the edge gluings, E the distinct
    labels, F the one face. Free labels contribute boundary circles; a
    label glued to itself with equal exponents kills orientability.
    """
    n = len(word.letters)
    occ = _occurrences(word)

    partner = [None] * n
    for pairs in occ.values():
        if len(pairs) == 2:
            (k1, _), (k2, _) = pairs
            partner[k1], partner[k2] = k2, k1

    # corner classes by union-find over the gluing transitions
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for pairs in occ.values():
        if len(pairs) == 2:
            (k1, e1), (k2, e2) = pairs
            union(_corner_of_endpoint(k1, e1, "start", n),
                  _corner_of_endpoint(k2, e2, "start", n))
            union(_corner_of_endpoint(k1, e1, "end", n),
                  _corner_of_endpoint(k2, e2, "end", n))

    v = len({find(i) for i in range(n)})
    e = len(occ)
    chi = v - e + 1
    orientable = all(not (len(p) == 2 and p[0][1] == p[1][1]) for p in occ.values())
    boundary = _boundary_count(word, partner, n)

    capped = chi + boundary
    genus = (2 - capped) // 2 if orientable else 2 - capped
    genus = max(genus, 0)
    cls = SurfaceClass(chi, orientable, boundary, genus, "")
    return SurfaceClass(chi, orientable, boundary, genus, canonical_name(cls))


def _closed_name(chi, orientable):
    if orientable:
        if chi == 2:
            return "sphere"
        if chi == 0:
            return "torus"
        if chi < 0 and chi % 2 == 0:
            return f"genus-{(2 - chi) // 2} surface"
    else:
        if chi == 1:
            return "projective plane"
        if chi == 0:
            return "Klein bottle"
        if chi < 0:
            return f"{2 - chi}-crosscap surface"
    return None


def canonical_name(c):
    """Human name of a surface class; falls back to a descriptive string
    for combinations outside the closed naming table."""
    chi, o, b = c.euler_char, c.orientable, c.boundary_count
    fallback = f"surface(chi={chi}, orientable={o}, boundary={b})"
    if b == 0:
        return _closed_name(chi, o) or fallback
    if o and chi == 1 and b == 1:
        return "disk"
    if o and chi == 0 and b == 2:
        return "annulus"
    if not o and chi == 0 and b == 1:
        return "Möbius band"
    base = _closed_name(chi + b, o)
    if base is None:
        return fallback
    suffix = "boundary component" if b == 1 else "boundary components"
    return f"{base} with {b} {suffix}"

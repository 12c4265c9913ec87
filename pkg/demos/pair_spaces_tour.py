"""
Tour of the three glued-square pair spaces
==========================================

A point pair on a closed loop can be packed into a single point of a
surface: ordered pairs fill a torus, ordered pairs with a collapsed axis a
pinched sphere, unordered pairs a Mobius band whose boundary is the
diagonal x = y. This script walks the canonicalization, encoding and orbit
machinery on concrete numbers.
"""
import numpy as np

from loopsurf import (
    PairOnLoop,
    Scheme,
    canonicalize,
    decode,
    encode_pair,
    equivalent,
    orbit,
    quotient_distance,
)

T, P, M = Scheme.TORUS, Scheme.PINCHED_SPHERE, Scheme.MOBIUS_UNORDERED


def banner(text):
    print()
    print("=" * 64)
    print(text)
    print("=" * 64)


banner("Canonical representatives")
print("torus, (1.2, -0.3)        ->", canonicalize(T, 1.2, -0.3))
print("pinched sphere, (0, 0.3)  ->", canonicalize(P, 0.0, 0.3))
print("pinched sphere, (1, 0.9)  ->", canonicalize(P, 1.0, 0.9), "(same pole)")
print("mobius, {0.1, 0.2}        ->", canonicalize(M, 0.1, 0.2))
print("mobius, {0.0, 0.5}        ->", canonicalize(M, 0.0, 0.5), "(antipodal tie)")

banner("Gluings as zero quotient distance")
print("torus (0, .3) ~ (1, .3):     d =", quotient_distance(T, (0, 0.3), (1, 0.3)))
print("mobius (.2, .6) ~ (.6, .2):  d =", quotient_distance(M, (0.2, 0.6), (0.6, 0.2)))
print("pinched (0, .1) ~ (1, .8):   d =", quotient_distance(P, (0.0, 0.1), (1.0, 0.8)))
print("equivalent at 1e-9?         ", equivalent(M, (0.2, 0.6), (0.6, 0.2)))

banner("A pair of loop positions as one surface point, and back")
pair = PairOnLoop(0.9, 0.1, ordered=False)
q = encode_pair(M, pair)
print("unordered pair {0.9, 0.1} ->", q)
print("   midpoint of the short arc crosses the wrap point: m =", q.u)
back = decode(q)
print("decoded back              -> {%.3f, %.3f}" % (back.a, back.b))

print()
print("the diagonal is the band's boundary: {t, t} has separation 0:")
print("   ", encode_pair(M, PairOnLoop(0.4, 0.4, ordered=False)))

banner("Orbits inside the closed unit square")
for scheme, x, y in ((T, 0.0, 0.0), (M, 0.3, 0.8), (M, 0.0, 0.4), (P, 1.0, 0.4)):
    o = orbit(scheme, x, y)
    if o.is_collapsed:
        print(f"{scheme.value:15s} ({x}, {y}) -> collapsed edges {o.edges}")
    else:
        print(f"{scheme.value:15s} ({x}, {y}) -> {sorted(o.points)}")

banner("Unordered pairs on an n-grid: n(n+1)/2 distinct points")
from loopsurf.pairspace import mobius_chart

for n in (4, 8, 16):
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    m, d = mobius_chart(i.ravel() / n, j.ravel() / n)
    print(f"n={n:3d}: {len(set(zip(m, d)))} classes == {n * (n + 1) // 2}")

"""R^3 realizations of the glued-square schemes.

Vectorized point charts, welded triangle meshes built on an exact integer
grid quotient, mesh invariants (V, E, F, Euler characteristic, boundary
loops, orientability), and Wavefront OBJ export / re-parsing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pairspace import Scheme, mobius_chart, quotient_point


class NonManifoldEdgeError(ValueError):
    """An undirected edge with more than two incident triangles."""

    def __init__(self, edge, count):
        self.edge = tuple(int(i) for i in edge)
        self.count = int(count)
        super().__init__(f"non-manifold edge {self.edge}: {self.count} incident triangles")


@dataclass(frozen=True)
class EmbedConfig:
    """Embedding radii: R major, r minor, w half-width of the band.

    Defaults keep all three surfaces embedded without self-intersection.
    """

    R: float = 2.0
    r: float = 1.0
    w: float = 0.5

    def __post_init__(self):
        if not (self.r > 0.0):
            raise ValueError(f"minor radius must be positive, got r={self.r!r}")
        if not (self.R > self.r):
            raise ValueError(f"need R > r for an embedded torus, got R={self.R!r}, r={self.r!r}")
        if not (0.0 < self.w < self.R):
            raise ValueError(f"need 0 < w < R, got w={self.w!r}, R={self.R!r}")


@dataclass(frozen=True)
class Mesh:
    """Welded triangle mesh in R^3.

    ``weld_map`` maps the original row-major grid index to the welded
    vertex index (None for meshes not built from a grid).

    ``edge_ids`` / ``edge_signs`` (grid meshes only) carry the exact
    quotient identity of each triangle side: slot k of triangle f is the
    edge from vertex k to vertex (k+1)%3, edge_ids[f, k] its equivalence
    class and edge_signs[f, k] the traversal direction relative to the
    class representative. At coarse resolutions distinct quotient edges can
    join the same pair of welded vertices, so vertex pairs alone would
    under-count E; invariants fall back to vertex pairs when these fields
    are absent (e.g. meshes re-parsed from OBJ).
    """

    vertices: np.ndarray
    triangles: np.ndarray
    weld_map: np.ndarray | None = None
    edge_ids: np.ndarray | None = None
    edge_signs: np.ndarray | None = None


@dataclass(frozen=True)
class MeshInvariants:
    V: int
    E: int
    F: int
    euler_char: int
    boundary_loops: int
    orientable: bool

    def to_json(self):
        return {"V": self.V, "E": self.E, "F": self.F, "chi": self.euler_char,
                "boundary_loops": self.boundary_loops, "orientable": self.orientable}


# --------------------------------------------------------------------- charts

def torus_chart(u, v, cfg=EmbedConfig()):
    """Ordered-pair chart: (u, v) in [0,1)^2 onto the torus of radii (R, r)."""
    tu = 2.0 * np.pi * np.asarray(u, float)
    tv = 2.0 * np.pi * np.asarray(v, float)
    ring = cfg.R + cfg.r * np.cos(tv)
    return np.stack([ring * np.cos(tu), ring * np.sin(tu),
                     cfg.r * np.sin(tv)], axis=-1)


def pinched_sphere_chart(u, v, cfg=EmbedConfig()):
    """Horn-torus chart: the hole is pinched shut at u in {0, 1}.

    u rides the non-periodic axis, v the loop direction. The pole itself is
    the limit point (0, 0, 0).
    """
    th = 2.0 * np.pi * np.asarray(u, float) + np.pi
    tv = 2.0 * np.pi * np.asarray(v, float)
    rad = cfg.r * (1.0 + np.cos(th))
    return np.stack([rad * np.cos(tv), rad * np.sin(tv),
                     cfg.r * np.sin(th)], axis=-1)


def mobius_band_chart(m, d, cfg=EmbedConfig()):
    """Unordered-pair chart: canonical (m, d) onto a half-twist band.

    The sign of the width coordinate flips at m = 1/2; the identity
    E(t + 2pi, s) = E(t, -s) of the underlying band makes the chart
    continuous across both seams (m = 1/2 and m -> 1).
    """
    m = np.asarray(m, float)
    t = np.mod(4.0 * np.pi * m, 2.0 * np.pi)
    sigma = np.where(m < 0.5, 1.0, -1.0)
    s = (1.0 - 4.0 * np.asarray(d, float)) * sigma
    ring = cfg.R + s * cfg.w * np.cos(0.5 * t)
    return np.stack([ring * np.cos(t), ring * np.sin(t),
                     s * cfg.w * np.sin(0.5 * t)], axis=-1)


def embed(scheme, q, cfg=EmbedConfig()):
    """Embed a single canonical quotient point into R^3.

    Rejects points outside the scheme's canonical domain; the
    pinched-sphere pole maps to the origin exactly.
    """
    if q.scheme is not scheme:
        raise ValueError(f"point carries scheme {q.scheme.value!r}, expected {scheme.value!r}")
    q = quotient_point(scheme, q.u, q.v)
    if scheme is Scheme.TORUS:
        return torus_chart(q.u, q.v, cfg)
    if scheme is Scheme.PINCHED_SPHERE:
        if q.is_pole:
            return np.zeros(3)
        return pinched_sphere_chart(q.u, q.v, cfg)
    return mobius_band_chart(q.u, q.v, cfg)


# ---------------------------------------------------------------------- meshes

def _grid_class_keys(scheme, n):
    """Integer class key per grid vertex (i, j), i, j in 0..n, row-major.

    Welding is decided entirely on indices: two grid vertices are welded
    iff their square coordinates are scheme-equivalent, which on the
    uniform grid is an exact integer condition.
    """
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    im, jm = i % n, j % n
    if scheme is Scheme.TORUS:
        return (im * n + jm).ravel()
    if scheme is Scheme.PINCHED_SPHERE:
        keys = 1 + (i - 1) * n + jm
        return np.where(im == 0, 0, keys).ravel()
    if scheme is Scheme.MOBIUS_UNORDERED:
        a = np.minimum(im, jm)
        b = np.maximum(im, jm)
        return (a * n + b).ravel()
    raise ValueError(f"unknown scheme {scheme!r}")


_SWAPPED_DIR = np.array([1, 0, 2])  # horizontal <-> vertical, diagonal fixed


def _edge_orbit_keys(scheme, n, pi, pj, qi, qj):
    """Canonical orbit key and traversal sign for grid edges (vectorized).

    An edge is normalized so its displacement is (1,0), (0,1) or (1,1);
    sign is +1 when the traversal p->q already ran that way. The key wraps
    the normalized tail by the scheme's translation group and, for the
    unordered-pair scheme, minimizes over the swap image (which maps
    positively-directed edges to positively-directed edges, so signs stay
    comparable within a class).
    """
    di, dj = qi - pi, qj - pj
    flip = (di < 0) | ((di == 0) & (dj < 0))
    bi = np.where(flip, qi, pi)
    bj = np.where(flip, qj, pj)
    ndi = np.where(flip, -di, di)
    ndj = np.where(flip, -dj, dj)
    sign = np.where(flip, -1, 1).astype(np.int8)
    d = np.select([(ndi == 1) & (ndj == 0), (ndi == 0) & (ndj == 1)], [0, 1], default=2)

    def pack(i, j, dd):
        return (i * (n + 1) + j) * 3 + dd

    if scheme is Scheme.TORUS:
        key = pack(bi % n, bj % n, d)
    elif scheme is Scheme.PINCHED_SPHERE:
        key = pack(bi, bj % n, d)
    else:
        k1 = pack(bi % n, bj % n, d)
        k2 = pack(bj % n, bi % n, _SWAPPED_DIR[d])
        key = np.minimum(k1, k2)
    return key, sign


class _SignedUnionFind:
    """Union-find over edge-orbit keys carrying a relative direction sign."""

    def __init__(self):
        self.parent = {}
        self.parity = {}

    def find(self, k):
        if k not in self.parent:
            self.parent[k] = k
            self.parity[k] = 1
            return k, 1
        path = []
        while self.parent[k] != k:
            path.append(k)
            k = self.parent[k]
        sign = 1
        for node in reversed(path):
            sign *= self.parity[node]
            self.parent[node] = k
            self.parity[node] = sign
        return k, self.parity[path[0]] if path else 1

    def find_sign(self, k):
        root, _ = self.find(k)
        return root, self.parity[k] if k != root else 1

    def union(self, k1, k2, rel):
        r1, s1 = self.find_sign(k1)
        r2, s2 = self.find_sign(k2)
        if r1 != r2:
            # k1 direction ~ rel * k2 direction
            self.parent[r2] = r1
            self.parity[r2] = s1 * rel * s2


def build_mesh(scheme, n, cfg=EmbedConfig()):
    """Welded triangle mesh realizing the scheme's quotient.

    Triangulates the (n+1) x (n+1) grid on the closed unit square, two
    triangles per cell split along the x = y diagonal direction, and welds
    grid vertices whose square coordinates are scheme-equivalent -- an
    exact integer condition. Triangles that degenerate under welding
    (collapsed-edge slivers) are dropped, with their two surviving sides
    identified; faces duplicated by the unordered-pair fold are removed,
    keeping the first copy in creation order. Edge identities are tracked
    as exact grid-edge orbits (see Mesh.edge_ids).
    """
    if n < 3:
        raise ValueError(f"grid resolution must be >= 3, got {n}")
    keys = _grid_class_keys(scheme, n)
    uniq, first_idx, inverse = np.unique(keys, return_index=True, return_inverse=True)
    inverse = inverse.ravel()
    order = np.argsort(first_idx, kind="stable")
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    weld = rank[inverse]                      # grid flat index -> welded vertex
    rep = first_idx[order]                    # welded vertex -> representative grid index

    ri, rj = rep // (n + 1), rep % (n + 1)
    if scheme is Scheme.TORUS:
        verts = torus_chart((ri % n) / n, (rj % n) / n, cfg)
    elif scheme is Scheme.PINCHED_SPHERE:
        verts = pinched_sphere_chart(ri / n, (rj % n) / n, cfg)
        verts[(ri % n) == 0] = 0.0            # collapsed-edge class -> pole
    else:
        a = np.minimum(ri % n, rj % n) / n
        b = np.maximum(ri % n, rj % n) / n
        m, d = mobius_chart(a, b)
        verts = mobius_band_chart(m, d, cfg)

    # two triangles per cell, row-major cell order, fixed diagonal direction
    ci, cj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ci, cj = ci.ravel(), cj.ravel()
    corner_i = np.stack([np.repeat(ci, 2), np.empty(2 * n * n, int), np.empty(2 * n * n, int)], axis=1)
    corner_j = np.stack([np.repeat(cj, 2), np.empty(2 * n * n, int), np.empty(2 * n * n, int)], axis=1)
    corner_i[0::2, 1], corner_j[0::2, 1] = ci + 1, cj          # lower: (c), (c+di), (c+di+dj)
    corner_i[0::2, 2], corner_j[0::2, 2] = ci + 1, cj + 1
    corner_i[1::2, 1], corner_j[1::2, 1] = ci + 1, cj + 1      # upper: (c), (c+di+dj), (c+dj)
    corner_i[1::2, 2], corner_j[1::2, 2] = ci, cj + 1
    grid_flat = corner_i * (n + 1) + corner_j
    tris_all = weld[grid_flat]

    degenerate = ((tris_all[:, 0] == tris_all[:, 1])
                  | (tris_all[:, 1] == tris_all[:, 2])
                  | (tris_all[:, 0] == tris_all[:, 2]))
    keep = ~degenerate
    if scheme is Scheme.MOBIUS_UNORDERED:
        # the swap folds triangle 2*(ci*n+cj)+h onto 2*(cj*n+ci)+(1-h);
        # keep the first copy of each orbit in creation order
        t = np.arange(2 * n * n)
        partner = 2 * ((cj.repeat(2)) * n + ci.repeat(2)) + (1 - t % 2)
        keep &= t <= partner

    # per-slot edge orbits (slot k joins corners k and (k+1)%3)
    pi = corner_i[:, [0, 1, 2]].ravel()
    pj = corner_j[:, [0, 1, 2]].ravel()
    qi = corner_i[:, [1, 2, 0]].ravel()
    qj = corner_j[:, [1, 2, 0]].ravel()
    ekey, esign = _edge_orbit_keys(scheme, n, pi, pj, qi, qj)
    ekey = ekey.reshape(-1, 3)
    esign = esign.reshape(-1, 3)

    # a dropped sliver collapses to a segment: its two surviving sides are
    # one and the same quotient edge
    if degenerate.any():
        uf = _SignedUnionFind()
        tail_flat = (np.where(esign.ravel() > 0, pi, qi) * (n + 1)
                     + np.where(esign.ravel() > 0, pj, qj)).reshape(-1, 3)
        for t in np.nonzero(degenerate)[0]:
            wt = tris_all[t]
            slots = [k for k in range(3) if wt[k] != wt[(k + 1) % 3]]
            if len(slots) != 2:
                continue
            k1, k2 = slots
            # identify so that matching welded endpoints correspond: compare
            # which end of each (+)-directed representative is the repeated
            # (collapsed) class
            w_rep = wt[[k for k in range(3) if k not in slots][0]]
            tail1 = weld[tail_flat[t, k1]] == w_rep
            tail2 = weld[tail_flat[t, k2]] == w_rep
            rel = 1 if tail1 == tail2 else -1
            uf.union(int(ekey[t, k1]), int(ekey[t, k2]), rel)

        flat_keys = ekey.ravel()
        roots = np.empty(len(flat_keys), dtype=np.int64)
        parities = np.empty(len(flat_keys), dtype=np.int8)
        cache = {}
        for idx, k in enumerate(flat_keys):
            k = int(k)
            if k not in cache:
                cache[k] = uf.find_sign(k)
            roots[idx], parities[idx] = cache[k]
        ekey = roots.reshape(-1, 3)
        esign = esign * parities.reshape(-1, 3)

    tris = tris_all[keep]
    ekey = ekey[keep]
    esign = esign[keep]

    # dense edge ids in first-occurrence order over the kept slots
    _, first_slot, inv_e = np.unique(ekey.ravel(), return_index=True, return_inverse=True)
    order_e = np.argsort(first_slot, kind="stable")
    rank_e = np.empty(len(order_e), dtype=np.int64)
    rank_e[order_e] = np.arange(len(order_e))
    edge_ids = rank_e[inv_e.ravel()].reshape(-1, 3)

    # compact any unreferenced vertex classes (none for these schemes, but
    # the mesh contract requires it)
    used = np.zeros(len(verts), dtype=bool)
    used[tris] = True
    if not used.all():
        remap = np.cumsum(used) - 1
        verts = verts[used]
        tris = remap[tris]
        weld = remap[weld]

    return Mesh(vertices=verts, triangles=tris, weld_map=weld,
                edge_ids=edge_ids, edge_signs=esign)


def _trace_boundary_loops(boundary_pairs):
    """Number of closed loops formed by the given (a, b) boundary edges."""
    if not len(boundary_pairs):
        return 0
    incident = {}
    for eid, (a, b) in enumerate(boundary_pairs):
        incident.setdefault(int(a), []).append(eid)
        incident.setdefault(int(b), []).append(eid)
    for v, eids in incident.items():
        if len(eids) != 2:
            raise ValueError(
                f"boundary does not form closed loops: vertex {v} has "
                f"{len(eids)} boundary edges")
    loops = 0
    seen = [False] * len(boundary_pairs)
    for start in range(len(boundary_pairs)):
        if seen[start]:
            continue
        loops += 1
        eid = start
        v = int(boundary_pairs[start][0])
        while not seen[eid]:
            seen[eid] = True
            a, b = int(boundary_pairs[eid][0]), int(boundary_pairs[eid][1])
            v = b if v == a else a
            e1, e2 = incident[v]
            eid = e2 if e1 == eid else e1
    return loops


def _windings_consistent(nf, flat_ids, flat_signs, counts):
    """Greedy propagation of triangle winding across 2-incident edges;
    False when the propagation cannot 2-color the faces."""
    slot_tri = np.repeat(np.arange(nf), 3)
    order = np.argsort(flat_ids, kind="stable")
    sorted_ids = flat_ids[order]
    adj = [[] for _ in range(nf)]
    pos = 0
    while pos < len(order):
        end = pos
        while end < len(order) and sorted_ids[end] == sorted_ids[pos]:
            end += 1
        if end - pos == 2:
            s1, s2 = order[pos], order[end - 1]
            f1, f2 = int(slot_tri[s1]), int(slot_tri[s2])
            rel = -int(flat_signs[s1]) * int(flat_signs[s2])
            adj[f1].append((f2, rel))
            adj[f2].append((f1, rel))
        pos = end

    orient = np.zeros(nf, dtype=np.int8)
    for seed in range(nf):
        if orient[seed]:
            continue
        orient[seed] = 1
        stack = [seed]
        while stack:
            f = stack.pop()
            for g, rel in adj[f]:
                want = rel * orient[f]
                if orient[g] == 0:
                    orient[g] = want
                    stack.append(g)
                elif orient[g] != want:
                    return False
    return True


def mesh_invariants(mesh):
    """Count V, E, F, trace boundary loops and decide orientability.

    Orientability is decided by propagating a consistent winding across
    every edge shared by two triangles; a propagation conflict means the
    mesh is non-orientable. Edges with more than two incident triangles
    raise NonManifoldEdgeError.

    Edge identity comes from the mesh's exact quotient classes when
    present, otherwise from undirected welded-vertex pairs.
    """
    verts = np.asarray(mesh.vertices)
    tris = np.asarray(mesh.triangles, dtype=np.int64)
    nv = len(verts)
    if tris.size:
        if tris.min() < 0 or tris.max() >= nv:
            raise ValueError("triangle references an invalid vertex index")
        if np.any((tris[:, 0] == tris[:, 1]) | (tris[:, 1] == tris[:, 2])
                  | (tris[:, 0] == tris[:, 2])):
            raise ValueError("degenerate triangle with repeated vertex")
    nf = len(tris)
    if nf == 0:
        return MeshInvariants(nv, 0, 0, nv, 0, True)

    slot_verts = np.stack([tris[:, [0, 1, 2]].ravel(),
                           tris[:, [1, 2, 0]].ravel()], axis=1)
    if mesh.edge_ids is not None:
        flat_ids = np.asarray(mesh.edge_ids, dtype=np.int64).ravel()
        flat_signs = np.asarray(mesh.edge_signs, dtype=np.int64).ravel()
        if flat_ids.shape != (3 * nf,) or flat_signs.shape != (3 * nf,):
            raise ValueError("edge classes do not match the triangle list")
        ne = int(flat_ids.max()) + 1
        counts = np.bincount(flat_ids, minlength=ne)
    else:
        pairs = np.sort(slot_verts, axis=1)
        _, flat_ids, counts = np.unique(pairs, axis=0,
                                        return_inverse=True, return_counts=True)
        flat_ids = flat_ids.ravel()
        flat_signs = np.where(slot_verts[:, 0] < slot_verts[:, 1], 1, -1)
        ne = len(counts)

    bad = np.nonzero(counts > 2)[0]
    if bad.size:
        slot = int(np.nonzero(flat_ids == bad[0])[0][0])
        raise NonManifoldEdgeError(slot_verts[slot], counts[bad[0]])

    first_slot = np.full(ne, -1, dtype=np.int64)
    seen_order = np.argsort(flat_ids, kind="stable")
    first_slot[flat_ids[seen_order[::-1]]] = seen_order[::-1]
    boundary_ids = np.nonzero(counts == 1)[0]
    boundary_pairs = [slot_verts[first_slot[e]] for e in boundary_ids]
    loops = _trace_boundary_loops(boundary_pairs)

    orientable = _windings_consistent(nf, flat_ids, flat_signs, counts)
    return MeshInvariants(nv, ne, nf, nv - ne + nf, loops, orientable)


# ------------------------------------------------------------------------- OBJ

def export_obj(mesh, sink):
    """Write the mesh as Wavefront OBJ text to a byte sink.

    "v x y z" lines with 17 significant digits in vertex-index order, then
    "f i j k" lines (1-based) in triangle creation order.
    """
    verts = np.asarray(mesh.vertices)
    tris = np.asarray(mesh.triangles)
    if len(verts) == 0 or len(tris) == 0:
        raise ValueError("empty mesh")
    lines = [f"v {x:.17g} {y:.17g} {z:.17g}\n" for x, y, z in verts]
    lines += [f"f {a + 1} {b + 1} {c + 1}\n" for a, b, c in tris]
    payload = "".join(lines)
    try:
        sink.write(payload.encode("ascii"))
    except TypeError:
        sink.write(payload)


def parse_obj(source):
    """Re-parse OBJ data into a Mesh.

    ``source`` may be an open stream, OBJ text (str or bytes containing a
    newline), or a filesystem path.
    """
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (str, bytes)) and b"\n" in (
            source if isinstance(source, bytes) else source.encode("ascii", "ignore")):
        text = source
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()
    if isinstance(text, bytes):
        text = text.decode("ascii")
    verts, tris = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0] == "#":
            continue
        if parts[0] == "v":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: malformed vertex line {line!r}")
            verts.append([float(p) for p in parts[1:]])
        elif parts[0] == "f":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: malformed face line {line!r}")
            tris.append([int(p) - 1 for p in parts[1:]])
        else:
            raise ValueError(f"line {lineno}: unsupported OBJ directive {parts[0]!r}")
    return Mesh(vertices=np.asarray(verts, dtype=float),
                triangles=np.asarray(tris, dtype=np.int64).reshape(-1, 3))

import io
import itertools

import numpy as np
import pytest

from loopsurf.embed import (
    EmbedConfig,
    Mesh,
    NonManifoldEdgeError,
    build_mesh,
    embed,
    export_obj,
    mesh_invariants,
    mobius_band_chart,
    parse_obj,
    pinched_sphere_chart,
    torus_chart,
)
from loopsurf.pairspace import QuotientPoint, Scheme, canonicalize, quotient_distance

T, P, M = Scheme.TORUS, Scheme.PINCHED_SPHERE, Scheme.MOBIUS_UNORDERED
CFG = EmbedConfig()


# ---------------------------------------------------------------- point charts

def test_torus_outer_equator():
    p = embed(T, QuotientPoint(T, 0.0, 0.0))
    assert np.allclose(p, [3.0, 0.0, 0.0], atol=1e-15)


def test_pinched_pole_is_origin():
    p = embed(P, QuotientPoint(P, 0.0, 0.0, is_pole=True))
    assert np.array_equal(p, np.zeros(3))


def test_mobius_core_circle_point():
    # (m, d) = (1/4, 1/4): t = pi, width coordinate 0 -> (-R, 0, 0)
    p = embed(M, QuotientPoint(M, 0.25, 0.25))
    assert np.allclose(p, [-2.0, 0.0, 0.0], atol=1e-14)


def test_mobius_seam_limits():
    eps = 1e-8
    for d in (0.0, 0.1, 0.2):
        a = mobius_band_chart(0.5 - eps, d, CFG)
        b = mobius_band_chart(0.5 + eps, d, CFG)
        assert np.linalg.norm(a - b) < 1e-6
        c = mobius_band_chart(1.0 - eps, d, CFG)
        e = mobius_band_chart(0.0, d, CFG)
        assert np.linalg.norm(c - e) < 1e-6


def test_embed_rejects_non_canonical():
    with pytest.raises(ValueError, match="canonical domain"):
        embed(T, QuotientPoint(T, 1.0, 0.5))
    with pytest.raises(ValueError, match="antipodal"):
        embed(M, QuotientPoint(M, 0.9, 0.25))


def test_embed_scheme_mismatch():
    with pytest.raises(ValueError, match="scheme"):
        embed(T, QuotientPoint(M, 0.1, 0.1))


def test_config_validation():
    with pytest.raises(ValueError, match="R > r"):
        EmbedConfig(R=1.0, r=2.0)
    with pytest.raises(ValueError, match="positive"):
        EmbedConfig(r=-1.0)
    with pytest.raises(ValueError, match="w < R"):
        EmbedConfig(w=5.0)


def test_chart_constant_on_classes():
    rng = np.random.default_rng(8)
    for scheme in (T, P, M):
        for _ in range(200):
            x, y = rng.random(2)
            if scheme is T:
                others = [(x + 1.0, y), (x, y - 1.0), (x + 1.0, y - 1.0)]
            elif scheme is P:
                others = [(x, y + 1.0)]
            else:
                others = [(y, x), (y + 1.0, x), (y, x - 1.0)]
            base = embed(scheme, canonicalize(scheme, x, y))
            for ox, oy in others:
                q = canonicalize(scheme, ox, oy)
                assert np.linalg.norm(embed(scheme, q) - base) < 1e-9
    # both collapsed edges are the single pole
    for y1, y2 in ((0.3, 0.9), (0.0, 0.5)):
        a = embed(P, canonicalize(P, 0.0, y1))
        b = embed(P, canonicalize(P, 1.0, y2))
        assert np.array_equal(a, b)


def test_chart_injectivity_sampled():
    rng = np.random.default_rng(9)
    n = 2000
    for scheme in (T, P, M):
        x1, y1, x2, y2 = rng.random((4, n))
        if scheme is M:
            u1, v1 = np.vectorize(lambda a, b: (canonicalize(M, a, b).u,
                                                canonicalize(M, a, b).v))(x1, y1)
        qd = quotient_distance(scheme, (x1, y1), (x2, y2))
        mask = qd > 1e-3
        e1 = np.stack([embed(scheme, canonicalize(scheme, a, b))
                       for a, b in zip(x1[mask], y1[mask])])
        e2 = np.stack([embed(scheme, canonicalize(scheme, a, b))
                       for a, b in zip(x2[mask], y2[mask])])
        dist = np.linalg.norm(e1 - e2, axis=1)
        assert np.all(dist > 1e-6)


# --------------------------------------------------------------------- meshes

def test_torus_mesh_counts_n8():
    inv = mesh_invariants(build_mesh(T, 8))
    assert (inv.V, inv.E, inv.F) == (64, 192, 128)
    assert inv.euler_char == 0 and inv.boundary_loops == 0 and inv.orientable


def test_pinched_mesh_counts_n8():
    inv = mesh_invariants(build_mesh(P, 8))
    # sphere counts with the two pole classes merged into one vertex
    assert (inv.V, inv.E, inv.F) == (57, 168, 112)
    assert inv.euler_char == 1 and inv.boundary_loops == 0 and inv.orientable


def test_mobius_mesh_counts_n8():
    inv = mesh_invariants(build_mesh(M, 8))
    assert (inv.V, inv.E, inv.F) == (36, 100, 64)
    assert inv.euler_char == 0 and inv.boundary_loops == 1 and not inv.orientable


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 13, 16])
def test_mesh_theory_agreement(n):
    expected = {T: (0, 0, True), P: (1, 0, True), M: (0, 1, False)}
    for scheme, (chi, loops, orientable) in expected.items():
        inv = mesh_invariants(build_mesh(scheme, n))
        assert inv.euler_char == chi
        assert inv.boundary_loops == loops
        assert inv.orientable == orientable


def test_mesh_resolution_precondition():
    with pytest.raises(ValueError, match=">= 3"):
        build_mesh(T, 2)


def test_weld_map_consistency():
    n = 6
    for scheme in (T, P, M):
        mesh = build_mesh(scheme, n)
        for i in (0, 1, n - 1, n):
            for j in (0, 2, n):
                g = i * (n + 1) + j
                q = canonicalize(scheme, i / n, j / n)
                want = np.zeros(3) if (scheme is P and q.is_pole) else embed(scheme, q)
                assert np.linalg.norm(mesh.vertices[mesh.weld_map[g]] - want) < 1e-9


def test_mesh_vertices_all_referenced():
    for scheme in (T, P, M):
        mesh = build_mesh(scheme, 5)
        assert set(np.unique(mesh.triangles)) == set(range(len(mesh.vertices)))


def _orientable_by_exhaustion(mesh):
    """Independent oracle: search all winding assignments for one in which
    every shared edge is traversed oppositely by its two triangles."""
    tris = np.asarray(mesh.triangles)
    nf = len(tris)
    if mesh.edge_ids is not None:
        ids = np.asarray(mesh.edge_ids).ravel()
        signs = np.asarray(mesh.edge_signs).ravel()
    else:
        sv = np.stack([tris[:, [0, 1, 2]].ravel(), tris[:, [1, 2, 0]].ravel()], axis=1)
        _, ids = np.unique(np.sort(sv, axis=1), axis=0, return_inverse=True)
        ids = ids.ravel()
        signs = np.where(sv[:, 0] < sv[:, 1], 1, -1)
    groups = {}
    for slot, e in enumerate(ids):
        groups.setdefault(int(e), []).append(slot)
    constraints = [(g[0] // 3, int(signs[g[0]]), g[1] // 3, int(signs[g[1]]))
                   for g in groups.values() if len(g) == 2]
    for assign in itertools.product((1, -1), repeat=nf):
        if all(assign[f1] * s1 == -assign[f2] * s2
               for f1, s1, f2, s2 in constraints):
            return True
    return False


def test_orientability_against_exhaustive_oracle():
    for scheme in (T, P, M):
        mesh = build_mesh(scheme, 3)
        inv = mesh_invariants(mesh)
        assert inv.orientable == _orientable_by_exhaustion(mesh)


def test_single_triangle_invariants():
    mesh = Mesh(vertices=np.eye(3), triangles=np.array([[0, 1, 2]]))
    inv = mesh_invariants(mesh)
    assert (inv.V, inv.E, inv.F) == (3, 3, 1)
    assert inv.euler_char == 1 and inv.boundary_loops == 1 and inv.orientable


def test_non_manifold_edge_reported():
    mesh = Mesh(vertices=np.vstack([np.eye(3), [[1.0, 1.0, 1.0], [0.0, 1.0, 1.0]]]),
                triangles=np.array([[0, 1, 2], [0, 1, 3], [0, 1, 4]]))
    with pytest.raises(NonManifoldEdgeError, match=r"non-manifold edge \(0, 1\): 3"):
        mesh_invariants(mesh)


def test_refinement_stability():
    for scheme, key in ((T, (0, 0, True)), (P, (1, 0, True)), (M, (0, 1, False))):
        for n in (3, 9, 27):
            inv = mesh_invariants(build_mesh(scheme, n))
            assert (inv.euler_char, inv.boundary_loops, inv.orientable) == key


# ------------------------------------------------------------------------ OBJ

def test_obj_single_triangle():
    mesh = Mesh(vertices=np.eye(3), triangles=np.array([[0, 1, 2]]))
    sink = io.BytesIO()
    export_obj(mesh, sink)
    lines = sink.getvalue().decode().splitlines()
    assert sum(1 for l in lines if l.startswith("v ")) == 3
    assert [l for l in lines if l.startswith("f ")] == ["f 1 2 3"]


def test_obj_torus_counts():
    sink = io.BytesIO()
    export_obj(build_mesh(T, 8), sink)
    lines = sink.getvalue().decode().splitlines()
    assert sum(1 for l in lines if l.startswith("v ")) == 64
    assert sum(1 for l in lines if l.startswith("f ")) == 128


def test_obj_empty_mesh():
    with pytest.raises(ValueError, match="empty mesh"):
        export_obj(Mesh(vertices=np.zeros((0, 3)), triangles=np.zeros((0, 3), int)), io.BytesIO())


def test_obj_roundtrip_exact_invariants():
    for scheme in (T, P, M):
        mesh = build_mesh(scheme, 6)
        sink = io.BytesIO()
        export_obj(mesh, sink)
        back = parse_obj(sink.getvalue())
        assert mesh_invariants(back) == mesh_invariants(mesh)
        assert np.array_equal(back.vertices, mesh.vertices)  # 17 sig digits round-trip
        assert np.array_equal(back.triangles, mesh.triangles)


def test_obj_parse_rejects_garbage():
    with pytest.raises(ValueError, match="unsupported OBJ directive"):
        parse_obj("v 0 0 0\nvn 1 0 0\n")


def test_obj_write_failure_propagates():
    class Broken:
        def write(self, _):
            raise OSError("sink closed")
    mesh = Mesh(vertices=np.eye(3), triangles=np.array([[0, 1, 2]]))
    with pytest.raises(OSError, match="sink closed"):
        export_obj(mesh, Broken())


# -------------------------------------------------------- chart sanity extras

def test_vectorized_charts_match_embed():
    rng = np.random.default_rng(10)
    u, v = rng.random((2, 50))
    tc = torus_chart(u, v)
    pc = pinched_sphere_chart(u, v)
    for i in range(50):
        assert np.array_equal(tc[i], embed(T, canonicalize(T, u[i], v[i])))
        q = canonicalize(P, u[i], v[i])
        if not q.is_pole:
            assert np.array_equal(pc[i], pinched_sphere_chart(q.u, q.v))

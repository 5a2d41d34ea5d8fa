"""Face-graph combinatorics."""
import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from coxsys import catalog
from coxsys.facegraph import (
    FaceGraph,
    FaceGraphError,
    euler_stats,
    find_prismatic_region,
    from_points,
    from_triangulation,
    is_prismatic,
    is_simple_trivalent,
    lemma33_witness,
    theorem31_check,
)

CORPUS = ["cube", "dodecahedron", "pentagonal-prism", "truncated-icosahedron",
          "fig1-example", "fig1-nested", "fig1-quad"]


def brute_prismatic(g, face):
    """Reference check: any two neighbours at cyclic distance > 1 that share an edge?"""
    nb = g.faces[face]
    n = len(nb)
    if n <= 3:
        return None
    for i in range(n):
        for j in range(n):
            d = min((i - j) % n, (j - i) % n)
            if d > 1 and nb[j] in g.faces[nb[i]]:
                return False
    return True


def random_trivalent(seed, n_points):
    """Dual of the convex hull of random points on the sphere: a random simple trivalent graph."""
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n_points, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    hull = ConvexHull(pts)
    tris = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        a, b, c = (pts[k] for k in simplex)
        s = list(simplex) if np.cross(b - a, c - a) @ eq[:3] > 0 else [simplex[0], simplex[2], simplex[1]]
        tris.append([f"v{k}" for k in s])
    return from_triangulation(tris)


@pytest.mark.parametrize("name,V,E,F", [
    ("cube", 8, 12, 6),
    ("dodecahedron", 20, 30, 12),
    ("pentagonal-prism", 10, 15, 7),
    ("truncated-icosahedron", 60, 90, 32),
])
def test_euler_counts(name, V, E, F):
    g = catalog.graph(name)
    st_ = euler_stats(g)
    assert (st_.V, st_.E, st_.F) == (V, E, F)
    assert st_.avg_sides == pytest.approx(2 * E / F)


def test_cube_average_and_dodecahedron_average():
    assert euler_stats(catalog.graph("cube")).avg_sides == 4
    assert euler_stats(catalog.graph("dodecahedron")).avg_sides == 5
    assert euler_stats(catalog.graph("pentagonal-prism")).avg_sides == pytest.approx(30 / 7)


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_invariants(name):
    g = catalog.graph(name)
    assert is_simple_trivalent(g)
    s = euler_stats(g)
    assert 2 * s.E == 3 * s.V
    assert s.avg_sides < 6
    assert s.side_sum == 2 * s.E and s.side_sum % 6 == 0
    assert g.n_sides(lemma33_witness(g)) <= 5
    for f in g.labels:
        assert is_prismatic(g, f) == brute_prismatic(g, f)


def test_square_pyramid_not_trivalent():
    g = catalog.graph("square-pyramid")
    assert not is_simple_trivalent(g)
    assert sorted(g.vertex_degrees()) == [3, 3, 3, 3, 4]
    with pytest.raises(FaceGraphError):
        euler_stats(g)


def test_small_face_witness_examples():
    assert catalog.graph("cube").n_sides(lemma33_witness(catalog.graph("cube"))) == 4
    g = catalog.graph("truncated-icosahedron")
    w = lemma33_witness(g)
    assert g.n_sides(w) == 5 == min(g.n_sides(f) for f in g.labels)


@pytest.mark.parametrize("name", ["cube", "dodecahedron", "pentagonal-prism", "truncated-icosahedron"])
def test_all_prismatic(name):
    g = catalog.graph(name)
    assert all(is_prismatic(g, f) for f in g.labels)
    assert find_prismatic_region(g) is None


def test_quadrilateral_with_adjacent_opposite_neighbours():
    g = catalog.graph("fig1-quad")
    assert is_prismatic(g, "Q") is False
    nb = g.neighbors("Q")
    assert any(g.adjacent(nb[i], nb[j]) for i, j in combinations(range(4), 2) if (j - i) % 4 == 2)


@pytest.mark.parametrize("name", ["fig1-example", "fig1-nested", "fig1-quad"])
def test_prismatic_region(name):
    g = catalog.graph(name)
    rep = find_prismatic_region(g)
    assert rep is not None and rep.all_interior_prismatic
    assert rep.interior_faces
    assert all(brute_prismatic(g, f) for f in rep.interior_faces)
    a, b, c = rep.bounding_faces
    assert g.adjacent(a, b) and g.adjacent(b, c) and g.adjacent(a, c)
    assert all(not brute_prismatic(g, f) for f in rep.bounding_faces)
    assert rep.iterations <= len(g.labels)


def test_nested_example_needs_two_rounds():
    assert find_prismatic_region(catalog.graph("fig1-nested")).iterations == 2


def test_region_rejects_triangles():
    g = random_trivalent(1, 12)
    if any(g.n_sides(f) == 3 for f in g.labels):
        with pytest.raises(FaceGraphError):
            find_prismatic_region(g)


def test_prismatic_triangle_not_applicable():
    tetra = from_points(np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float))
    assert all(is_prismatic(tetra, f) is None for f in tetra.labels)
    rep = theorem31_check(tetra, compact=True)
    assert not rep.verdict and "precondition" in rep.notes


@pytest.mark.parametrize("name,sides", [("dodecahedron", {5}), ("pentagonal-prism", {4, 5}), ("cube", {4})])
def test_prismatic_witness_face(name, sides):
    g = catalog.graph(name)
    rep = theorem31_check(g, compact=True)
    assert rep.verdict
    face = rep.witness.split()[1]
    assert g.n_sides(face) in sides and is_prismatic(g, face)


@pytest.mark.parametrize("name", CORPUS)
def test_prismatic_witness_on_corpus(name):
    g = catalog.graph(name)
    assert theorem31_check(g, compact=False).verdict
    assert theorem31_check(g, compact=True).verdict


def test_unknown_face():
    with pytest.raises(FaceGraphError):
        is_prismatic(catalog.graph("cube"), "nope")


def test_ingestion_errors():
    with pytest.raises(FaceGraphError):
        FaceGraph({"A": ["B", "C"], "B": ["A"], "C": ["A"]})
    with pytest.raises(FaceGraphError):
        FaceGraph.from_json({"faces": {"A": ["B", "C", "D"], "B": ["A", "C", "D"], "C": ["A", "B", "D"],
                                        "D": ["A", "B"]}})
    with pytest.raises(FaceGraphError):
        FaceGraph.from_json({"nofaces": 1})


def test_json_round_trip(tmp_path):
    for name in CORPUS:
        g = catalog.graph(name)
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(g.to_json()))
        h = FaceGraph.load(p)
        assert h.edges == g.edges and len(h.vertices) == len(g.vertices)


def test_reversed_cycles_are_reoriented():
    g = catalog.graph("cube")
    flipped = {f: list(reversed(nb)) if i % 2 else list(nb) for i, f in enumerate(g.labels) for nb in [g.faces[f]]}
    h = FaceGraph(flipped)
    assert is_simple_trivalent(h) and h.edges == g.edges


def test_face_graph_of_realized_dodecahedron_matches_combinatorics():
    g = catalog.graph("dodecahedron-right")
    s = euler_stats(g)
    assert (s.V, s.E, s.F) == (20, 30, 12)
    assert all(is_prismatic(g, f) for f in g.labels)


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(6, 30))
def test_random_trivalent_graphs(seed, n):
    g = random_trivalent(seed, n)
    assert is_simple_trivalent(g)
    s = euler_stats(g)
    assert 2 * s.E == 3 * s.V and s.F == n and s.side_sum % 6 == 0 and s.avg_sides < 6
    assert g.n_sides(lemma33_witness(g)) <= 5
    for f in g.labels:
        assert is_prismatic(g, f) == brute_prismatic(g, f)
    if all(g.n_sides(f) > 3 for f in g.labels):
        rep = find_prismatic_region(g)
        if rep is not None:
            assert all(brute_prismatic(g, f) for f in rep.interior_faces)

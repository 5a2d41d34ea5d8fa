"""Executable versions of the injectivity-radius bounds and the finite enumerations."""
import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from coxsys import catalog
from coxsys.builder import INF, RealizationError, from_coxeter, ideal_polygon, regular_polygon, triangle_spec
from coxsys.search import bfs_systole, pair_systole
from coxsys.verify import (
    COMPACT_BOUND,
    FINITE_VOLUME_BOUND,
    TRIANGLE_BOUND,
    canonical_exponents,
    corollary46_check,
    enumerate_case2_outer,
    enumerate_case2b,
    enumerate_compact_tetrahedra,
    enumerate_finite_volume_tetrahedra,
    inner_triples,
    lemma43_identity,
    nikulin_bound,
    nikulin_check,
    outer_rejection,
    random_central_angles,
    section_polygon,
    theorem41_check,
    theorem42_check,
    triangle_doubling,
)
from coxsys.facegraph import face_graph_of


def ideal_skip_one_distance(th, i):
    """Closed form for sides i and i+2 of an ideal polygon with central angles th.

    Side k joins ideal points at directions phi_k, phi_k + th_k; its unit normal
    is (cos m, sin m, cos h) / sin h with m the mid-direction and h = th_k / 2.
    """
    n = len(th)
    phis = np.concatenate([[0.0], np.cumsum(th)[:-1]])

    def normal(k):
        h = th[k] / 2
        m = phis[k] + h
        return np.array([math.cos(m), math.sin(m), math.cos(h)]) / math.sin(h)

    e, f = normal(i), normal((i + 2) % n)
    c = e[0] * f[0] + e[1] * f[1] - e[2] * f[2]
    return math.acosh(-c) if c < -1 else 0.0


def right_polygon_side(n):
    return 2 * math.acosh(math.cos(math.pi / n) / math.sin(math.pi / 4))


# -- constants ---------------------------------------------------------------------------------


def test_bounds():
    assert COMPACT_BOUND == pytest.approx(2.12255012381, abs=1e-10)
    assert FINITE_VOLUME_BOUND == pytest.approx(2.63391579385, abs=1e-10)
    assert TRIANGLE_BOUND == pytest.approx(1.76274717404, abs=1e-10)
    assert nikulin_bound(4) == pytest.approx(math.acosh(3))
    assert nikulin_bound(6) == pytest.approx(math.acosh(5))


# -- polygons -----------------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(4, 13))
def test_nikulin_regular_ideal_equality(n):
    rep = nikulin_check(regular_polygon(n, INF))
    th = [2 * math.pi / n] * n
    assert rep.achieved == pytest.approx(ideal_skip_one_distance(th, 0), abs=1e-9)
    assert rep.achieved == pytest.approx(rep.bound, abs=1e-9)
    assert rep.verdict and not rep.strict


def test_nikulin_right_pentagon():
    rep = nikulin_check(regular_polygon(5, 2))
    assert rep.achieved == pytest.approx(right_polygon_side(5), abs=1e-9)
    assert rep.achieved < 2.1225 and rep.strict and rep.verdict


@pytest.mark.parametrize("n,k", [(n, k) for n in range(4, 11) for k in (2, 3, 4, 5, 7) if 2 / n + 1 / k < 1])
def test_nikulin_regular_compact_polygons(n, k):
    rep = nikulin_check(regular_polygon(n, k))
    assert rep.strict and rep.verdict and rep.achieved < rep.bound


def test_nikulin_random_ideal_polygons_against_closed_form():
    rng = np.random.default_rng(0)
    for n in range(4, 13):
        for _ in range(20):
            th = random_central_angles(rng, n)
            rep = nikulin_check(ideal_polygon(th))
            ref = min(ideal_skip_one_distance(th, i) for i in range(n))
            assert rep.achieved == pytest.approx(ref, abs=1e-9)
            assert rep.verdict


def test_nikulin_rejects_triangles():
    with pytest.raises(RealizationError):
        nikulin_check(from_coxeter(triangle_spec(2, 3, 7)))
    with pytest.raises(RealizationError):
        nikulin_check(catalog.polyhedron("T8"))


def test_ideal_square_closed_form():
    rp = ideal_polygon([math.pi / 2] * 4)
    rep = nikulin_check(rp)
    assert rep.achieved == pytest.approx(math.acosh(3), abs=1e-9)
    lhs, rhs = lemma43_identity([math.pi / 2] * 4, 0)
    assert lhs == pytest.approx(rhs, abs=1e-9) and rhs == pytest.approx(3.0)


@settings(max_examples=80)
@given(st.integers(3, 12), st.integers(0, 2**31), st.floats(0, 2 * math.pi))
def test_reflected_pair_identity(n, seed, start):
    th = random_central_angles(np.random.default_rng(seed), n)
    i = int(np.argmin(th))
    # side normals have Euclidean size 1/sin(theta/2); below 1e-3 the
    # cancellation in the inner product exceeds the 1e-9 budget
    assume(th[i] >= 1e-3)
    lhs, rhs = lemma43_identity(th, i, start)
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_random_central_angles():
    rng = np.random.default_rng(1)
    for n in range(3, 13):
        th = random_central_angles(rng, n)
        assert len(th) == n and sum(th) == pytest.approx(2 * math.pi, abs=1e-12)
        assert max(th) < math.pi and min(th) > 0


# -- Theorem for polygons -----------------------------------------------------------------------------


def test_polygon_bound_right_hexagon():
    rep = theorem42_check(regular_polygon(6, 2))
    assert rep.verdict and rep.strict
    assert rep.bound == pytest.approx(math.acosh(5))
    assert rep.achieved == pytest.approx(right_polygon_side(6), abs=1e-9)
    assert rep.achieved == pytest.approx(pair_systole(regular_polygon(6, 2)).injrad, abs=1e-12)


@pytest.mark.parametrize("pqr", [(2, 3, 7), (2, 4, 5), (3, 3, 4), (4, 4, 4), (2, 3, 8), (2, 5, 5), (3, 3, 5)])
def test_polygon_bound_triangles(pqr):
    tri = from_coxeter(triangle_spec(*pqr))
    rep = theorem42_check(tri, max_len=8)
    assert rep.verdict and rep.strict
    assert rep.achieved < math.acosh(3)
    assert 2 * rep.achieved == pytest.approx(2 * rep.data["quad_distance"], abs=1e-8)
    assert 2 * rep.achieved >= rep.data["bfs_min_length"] - 1e-9


def test_polygon_bound_ideal_vertex_triangle():
    tri = from_coxeter(triangle_spec(3, 3, INF))
    dbl = triangle_doubling(tri)
    assert dbl.case == "ideal vertex"
    rep = theorem42_check(tri)
    assert rep.verdict and not rep.strict


def test_doubling_cases():
    assert triangle_doubling(from_coxeter(triangle_spec(2, 3, 7))).case == "right angle"
    assert triangle_doubling(from_coxeter(triangle_spec(4, 4, 4))).case == "smallest angle"
    dbl = triangle_doubling(from_coxeter(triangle_spec(2, 4, 5)))
    assert dbl.quad.n_faces == 4


def test_doubled_237_distance_matches_bfs_systole():
    """The right-angle doubling of (2,3,7) realizes the group's systole."""
    rep = theorem42_check(from_coxeter(triangle_spec(2, 3, 7)))
    assert 2 * rep.achieved == pytest.approx(2 * math.acosh((1 + 2 * math.cos(2 * math.pi / 7)) / 2), abs=1e-9)


# -- polyhedra -------------------------------------------------------------------------------------


def test_section_polygon_of_right_dodecahedron_is_right_pentagon():
    rp = catalog.polyhedron("dodecahedron-right")
    g = face_graph_of(rp)
    poly = section_polygon(rp, g, g.labels[0])
    assert poly.n_faces == 5
    assert all(a == pytest.approx(math.pi / 2, abs=1e-9) for a in poly.angles.values())


def test_prismatic_face_bound_right_dodecahedron():
    rp = catalog.polyhedron("dodecahedron-right")
    rep = corollary46_check(rp)
    assert rep.verdict
    assert rep.bound == pytest.approx(COMPACT_BOUND)
    # faces around a face are perpendicular to it, so the gap is a right-pentagon side
    assert rep.achieved == pytest.approx(right_polygon_side(5), abs=1e-9)
    assert rep.data["pair_systole_length"] <= 2 * rep.achieved + 1e-9
    assert rep.data["translation_length"] == pytest.approx(2 * rep.achieved)


def test_prismatic_face_bound_cube():
    rep = corollary46_check(catalog.polyhedron("cube-2pi5"))
    assert rep.verdict and rep.bound == pytest.approx(math.acosh(3))


def test_prismatic_face_bound_simplex_not_applicable():
    rep = corollary46_check(catalog.polyhedron("T8"))
    assert rep.data == {"applicable": False} and not rep.verdict and "not applicable" in rep.notes


def test_injrad_bound_t8():
    rep = theorem41_check(catalog.polyhedron("T8"), compact=True, max_len=10)
    assert rep.verdict
    assert rep.achieved <= 1.66131 / 2 + 1e-3


@pytest.mark.parametrize("k", range(1, 10))
def test_injrad_bound_lanner(k):
    rp = catalog.polyhedron(f"lanner-{k}")
    rep = theorem41_check(rp, max_len=10)
    assert rep.verdict and rep.strict and rep.achieved < COMPACT_BOUND
    ref = bfs_systole(rp, 10)
    assert rep.achieved == pytest.approx(ref.injrad, abs=1e-12)


def test_injrad_bound_monotone_in_depth():
    rp = catalog.polyhedron("lanner-2")
    verdicts = [theorem41_check(rp, max_len=L).verdict for L in range(4, 11)]
    first = verdicts.index(True)
    assert all(verdicts[first:])


def test_injrad_bound_dodecahedron():
    rep = theorem41_check(catalog.polyhedron("dodecahedron-right"), max_len=4)
    assert rep.verdict
    assert "pair" in rep.notes or "prismatic" in rep.notes


def test_injrad_bound_noncompact_triangle():
    rep = theorem41_check(from_coxeter(triangle_spec(2, 3, INF)), max_len=10)
    assert rep.bound == pytest.approx(FINITE_VOLUME_BOUND) and rep.verdict


def test_finite_volume_tetrahedra():
    specs = enumerate_finite_volume_tetrahedra()
    for spec in specs:
        rep = theorem41_check(from_coxeter(spec), max_len=8)
        assert rep.verdict


# -- enumerations -----------------------------------------------------------------------------------


def test_outer_triples():
    assert enumerate_case2_outer() == [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 3, 3)]
    assert enumerate_case2_outer(40) == enumerate_case2_outer(20)


def test_outer_rejection_trace():
    why = outer_rejection((2, 3, 4))
    assert why is not None and "violates II" in why
    assert outer_rejection((2, 3, 3)) is None


def brute_outer_ok(outer, n_max=30):
    """Reference: does any inner triple up to n_max satisfy both conditions?"""
    from fractions import Fraction as F

    pairs = ((0, 1), (1, 2), (2, 0))
    for a in range(2, n_max + 1):
        for b in range(2, n_max + 1):
            for c in range(2, n_max + 1):
                inner = (a, b, c)
                if all(F(1, outer[i]) + F(1, outer[j]) + F(1, inner[k]) > 1 for k, (i, j) in enumerate(pairs)) \
                        and F(1, a) + F(1, b) + F(1, c) < 1:
                    return True
    return False


@pytest.mark.parametrize("outer", [(2, 2, 2), (2, 2, 5), (2, 2, 6), (2, 3, 3), (2, 3, 4), (3, 3, 3), (2, 4, 4)])
def test_outer_triples_agree_with_brute_force(outer):
    assert (outer_rejection(outer) is None) == brute_outer_ok(outer)


def test_outer_233_systems():
    assert enumerate_case2b() == [((2, 3, 3), (4, 2, 5)), ((2, 3, 3), (5, 2, 5))]
    assert enumerate_case2b(40) == enumerate_case2b(20)


def test_outer_233_systems_closed_under_relabelling():
    raw = set(inner_triples((2, 3, 3)))
    assert raw == {(x, y, z) for (z, y, x) in raw}
    assert raw == {(4, 2, 5), (5, 2, 4), (5, 2, 5)}


def test_outer_222_has_inner_triples():
    inner = inner_triples((2, 2, 2))
    assert (2, 3, 7) in inner


def coxeter_diagram_exponents(edges):
    ex = {(i, j): 2 for i in range(4) for j in range(i + 1, 4)}
    for (i, j), n in edges.items():
        ex[(min(i, j), max(i, j))] = n
    return tuple(ex[p] for p in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def relabel_min(ex):
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    best = None
    for perm in permutations(range(4)):
        m = {tuple(sorted((perm[i], perm[j]))): ex[k] for k, (i, j) in enumerate(pairs)}
        key = tuple(m[p] for p in pairs)
        best = key if best is None or key < best else best
    return best


LANNER_DIAGRAMS = [
    {(0, 1): 3, (1, 2): 5, (2, 3): 3},
    {(0, 1): 4, (1, 2): 3, (2, 3): 5},
    {(0, 1): 5, (1, 2): 3, (2, 3): 5},
    {(0, 1): 5, (1, 2): 3, (1, 3): 3},
    {(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 0): 4},
    {(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 0): 5},
    {(0, 1): 3, (1, 2): 4, (2, 3): 3, (3, 0): 4},
    {(0, 1): 3, (1, 2): 4, (2, 3): 3, (3, 0): 5},
    {(0, 1): 3, (1, 2): 5, (2, 3): 3, (3, 0): 5},
]


def test_lanner_classes_match_diagram_list():
    expected = {relabel_min(coxeter_diagram_exponents(d)) for d in LANNER_DIAGRAMS}
    assert len(expected) == 9
    got = {canonical_exponents(s) for s in enumerate_compact_tetrahedra()}
    assert got == expected


def test_lanner_count_stable():
    assert len(enumerate_compact_tetrahedra(10)) == 9
    assert {canonical_exponents(s) for s in enumerate_compact_tetrahedra(15)} == \
        {canonical_exponents(s) for s in enumerate_compact_tetrahedra(10)}


def test_t8_among_lanner():
    t8 = relabel_min(tuple(catalog.T8_EXPONENTS[p] for p in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]))
    assert t8 in {canonical_exponents(s) for s in enumerate_compact_tetrahedra()}


def test_finite_volume_count():
    """9 compact plus the 23 non-compact Coxeter tetrahedra of finite volume."""
    specs = enumerate_finite_volume_tetrahedra()
    assert len(specs) == 32
    compact = {canonical_exponents(s) for s in enumerate_compact_tetrahedra()}
    assert compact <= {canonical_exponents(s) for s in specs}

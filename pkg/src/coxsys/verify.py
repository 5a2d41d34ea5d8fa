"""Executable checks of the injectivity-radius bounds and the finite enumerations.

Bounds used throughout:

* polygons with n sides: some pair of sides two apart is at distance at most
  acosh(3 + 4cos(2 pi / n)), strictly less when the polygon is compact;
* Coxeter triangles: ell/2 <= acosh(3) for a suitable loxodromic element;
* finite-volume Coxeter polyhedra in H^3: injrad < acosh(7), and
  injrad < acosh(3 + 4cos(2 pi / 5)) when compact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

from .builder import (
    INF,
    CoxeterSpec,
    RealizationError,
    RealizedPolyhedron,
    embed_gram,
    gram_signature,
    measured_spec,
    place_canonically,
    polygon_cycle,
    realize,
    reduce_word,
    reflect_polyhedron,
    tetrahedron_spec,
)
from .facegraph import FaceGraph, face_graph_of, is_prismatic
from .lorentz import (
    hyperplane_relation,
    inner_matrix,
    minkowski_inner,
    normalize,
    reflection_matrix,
)
from .reports import VerificationReport, compare
from .search import bfs_systole, element, pair_systole

COMPACT_BOUND = math.acosh(3 + 4 * math.cos(2 * math.pi / 5))
FINITE_VOLUME_BOUND = math.acosh(7.0)
TRIANGLE_BOUND = math.acosh(3.0)
CHECK_TOL = 1e-9


def nikulin_bound(n: int) -> float:
    return math.acosh(3 + 4 * math.cos(2 * math.pi / n))


def _plane_distance(e, f) -> float:
    rel = hyperplane_relation(e, f)
    return rel.value if rel.kind == "ultraparallel" else 0.0


# -- polygons --------------------------------------------------------------------------


def _skip_one_distances(normals, order) -> list[float]:
    n = len(order)
    return [_plane_distance(normals[order[i]], normals[order[(i + 2) % n]]) for i in range(n)]


def nikulin_check(polygon: RealizedPolyhedron) -> VerificationReport:
    """Minimum distance between sides two apart, against acosh(3 + 4cos(2 pi/n))."""
    if polygon.dim != 2:
        raise RealizationError("nikulin_check needs a polygon")
    n = polygon.n_faces
    if n < 4:
        raise RealizationError("nikulin_check needs at least 4 sides")
    order = polygon_cycle(polygon)
    dists = _skip_one_distances(polygon.normals, order)
    i = int(np.argmin(dists))
    achieved = dists[i]
    bound = nikulin_bound(n)
    strict = polygon.is_compact
    a, b = polygon.labels[order[i]], polygon.labels[order[(i + 2) % n]]
    return VerificationReport(
        claim=f"min d(H_i, H_i+2) {'<' if strict else '<='} acosh(3+4cos(2pi/{n}))",
        bound=bound,
        achieved=achieved,
        witness=f"sides {a},{b}",
        verdict=compare(achieved, bound, strict, CHECK_TOL),
        strict=strict,
    )


def random_central_angles(rng: np.random.Generator, n: int) -> list[float]:
    """n central angles in (0, pi) summing to 2 pi, uniform on the simplex (rejection outside)."""
    while True:
        w = rng.dirichlet(np.ones(n)) * 2 * math.pi
        if w.max() < math.pi - 1e-6 and w.min() > 1e-6:
            w[-1] = 2 * math.pi - float(np.sum(w[:-1]))
            return [float(x) for x in w]


def nikulin_sweep(per_n: int = 100, seed: int = 0, regular=range(5, 13), ideal=range(4, 13)):
    """(kind, n, report) for regular right-angled n-gons and random ideal n-gons."""
    from .builder import ideal_polygon, regular_polygon

    out = [("regular", n, nikulin_check(regular_polygon(n, 2))) for n in regular]
    rng = np.random.default_rng(seed)
    for n in ideal:
        for _ in range(per_n):
            out.append(("ideal", n, nikulin_check(ideal_polygon(random_central_angles(rng, n)))))
    return out


def lemma43_identity(angles, i: int, start: float = 0.0) -> tuple[float, float]:
    """(-<e, f>, 3 + 4cos(theta_i)) for the reflected side pair of an ideal polygon.

    The side joining ideal vertices i and i+1 (central angle theta_i) is
    reflected in the diameters through each of its endpoints; e and f are
    the unit normals of the two images.
    """
    th = [float(a) for a in angles]
    phis = start + np.concatenate([[0.0], np.cumsum(th)[:-1]])
    p, q = phis[i], phis[i] + th[i]
    h = th[i] / 2
    m = p + h
    v = np.array([math.cos(m), math.sin(m), math.cos(h)]) / math.sin(h)
    a = np.array([-math.sin(p), math.cos(p), 0.0])
    b = np.array([-math.sin(q), math.cos(q), 0.0])
    e = reflection_matrix(a) @ v
    f = reflection_matrix(b) @ v
    return -minkowski_inner(e, f), 3 + 4 * math.cos(th[i])


def _witness_report(claim, bound, strict, length, word, extra_notes="", data=None):
    achieved = length / 2
    return VerificationReport(
        claim=claim,
        bound=bound,
        achieved=achieved,
        witness="word " + " ".join(str(x) for x in word),
        verdict=compare(achieved, bound, strict, CHECK_TOL),
        strict=strict,
        notes=extra_notes,
        data={"word": list(word), "translation_length": length, **(data or {})},
    )


@dataclass(frozen=True)
class Doubling:
    """The quadrilateral obtained by reflecting a triangle, and how it was built."""

    case: str
    mirrors: tuple[str, ...]
    quad: RealizedPolyhedron


def _angle_exponent(n) -> float:
    return 0.0 if n == INF else math.pi / float(n)


def triangle_doubling(tri: RealizedPolyhedron) -> Doubling:
    """Reflect a Coxeter triangle into a quadrilateral with disjoint opposite sides.

    Vertex cases, tried in turn: an ideal vertex (reflect in the opposite
    side); a right angle at v0 (reflect in v0v1, then in the merged side
    through v0v2); otherwise the smallest angle, at most pi/4 (reflect in
    the opposite side).
    """
    if tri.dim != 2 or tri.n_faces != 3:
        raise RealizationError("triangle_doubling needs a triangle")
    labels = tri.labels
    # vertex between sides x, y is opposite the third side
    corners = []
    for x, y in combinations(range(3), 2):
        z = 3 - x - y
        corners.append((_angle_exponent(tri.spec.exponent(labels[x], labels[y])), x, y, z))
    attempts = []
    ideal = [c for c in corners if c[0] == 0.0]
    right = [c for c in corners if abs(c[0] - math.pi / 2) < 1e-12]
    for _, x, y, z in ideal:
        attempts.append(("ideal vertex", (labels[z],)))
    for _, x, y, z in right:
        # v0 is the right-angled corner; v1 lies on side x, so the side v0v1 is y
        attempts.append(("right angle", (labels[y], labels[x])))
    smallest = min(corners)
    if smallest[0] <= math.pi / 4 + 1e-12:
        attempts.append(("smallest angle", (labels[smallest[3]],)))
    for case, mirrors in attempts:
        body = tri
        try:
            for m in mirrors:
                body = reflect_polyhedron(body, m)
        except RealizationError:
            continue
        if body.n_faces == 4 and _opposite_pairs_disjoint(body):
            return Doubling(case, mirrors, body)
    raise RealizationError(f"no doubling of {tri.name} gives a quadrilateral with disjoint opposite sides")


def _opposite_pairs(quad: RealizedPolyhedron) -> list[tuple[int, int]]:
    order = polygon_cycle(quad)
    return [(order[0], order[2]), (order[1], order[3])]


def _opposite_pairs_disjoint(quad: RealizedPolyhedron) -> bool:
    for i, j in _opposite_pairs(quad):
        if hyperplane_relation(quad.normals[i], quad.normals[j]).kind != "ultraparallel":
            return False
    return True


def _pair_word(rp: RealizedPolyhedron, i: int, j: int) -> tuple[int, ...]:
    return reduce_word(rp.reflection_word(i) + rp.reflection_word(j))


def theorem42_check(rp: RealizedPolyhedron, max_len: int = 8) -> VerificationReport:
    """Short loxodromic for a Coxeter polygon: side pair for n > 3, doubling for triangles."""
    if rp.dim != 2:
        raise RealizationError("theorem42_check needs a polygon")
    n = rp.n_faces
    strict = rp.is_compact
    if n > 3:
        nk = nikulin_check(rp)
        order = polygon_cycle(rp)
        dists = _skip_one_distances(rp.normals, order)
        k = int(np.argmin(dists))
        i, j = order[k], order[(k + 2) % n]
        if hyperplane_relation(rp.normals[i], rp.normals[j]).kind != "ultraparallel":
            return VerificationReport("injrad bound for a Coxeter polygon", nk.bound, 0.0, nk.witness,
                                      False, notes="closest sides two apart are not disjoint")
        word = _pair_word(rp, i, j)
        el = element(rp, word)
        bound = nikulin_bound(n)
        return _witness_report(
            f"ell/2 {'<' if strict else '<='} acosh(3+4cos(2pi/{n}))", bound, strict,
            el.iso.length, word, data={"side_distance": dists[k]},
        )

    dbl = triangle_doubling(rp)
    quad = dbl.quad
    best = None
    for i, j in _opposite_pairs(quad):
        d = _plane_distance(quad.normals[i], quad.normals[j])
        if best is None or d < best[0]:
            best = (d, i, j)
    d, i, j = best
    word = _pair_word(quad, i, j)
    el = element(rp, word)
    notes = [f"doubling case: {dbl.case}; mirrors {','.join(dbl.mirrors)}"]
    ok_length = el.iso.is_loxodromic and abs(el.iso.length - 2 * d) <= 1e-8
    if not ok_length:
        notes.append("witness word does not reproduce twice the side distance")
    data = {"quad_distance": d}
    if max_len >= 2:
        ref = bfs_systole(rp, max_len)
        if ref is not None:
            data["bfs_min_length"] = ref.min_translation_length
            if el.iso.length is not None and el.iso.length < ref.min_translation_length - 1e-9:
                notes.append("construction shorter than the BFS minimum")
                ok_length = False
    rep = _witness_report("ell/2 " + ("<" if strict else "<=") + " acosh(3)", TRIANGLE_BOUND, strict,
                          el.iso.length if el.iso.is_loxodromic else math.inf, word,
                          "; ".join(notes), data)
    rep.verdict = rep.verdict and ok_length
    return rep


# -- polyhedra ------------------------------------------------------------------------------------


def _not_applicable(claim: str, why: str) -> VerificationReport:
    return VerificationReport(claim, math.nan, math.nan, "", False, notes="not applicable: " + why,
                              data={"applicable": False})


def section_polygon(rp: RealizedPolyhedron, g: FaceGraph, face: str) -> RealizedPolyhedron:
    """The face ``face`` as a polygon inside its own hyperplane.

    Each neighbouring normal is projected onto the hyperplane and the Gram
    matrix of the projections is embedded in R^{2,1}.
    """
    i0 = rp.index(face)
    n0 = rp.normals[i0]
    cyc = list(g.neighbors(face))
    M = []
    for lab in cyc:
        v = rp.normals[rp.index(lab)]
        m = v - minkowski_inner(v, n0) * n0
        M.append(normalize(m))
    G = inner_matrix(np.array(M))
    N2 = place_canonically(embed_gram(G, 2))
    spec = measured_spec(f"{rp.name}/{face}", 2, tuple(cyc), N2)
    return realize(spec, N2)


def corollary46_check(rp: RealizedPolyhedron, g: FaceGraph | None = None) -> VerificationReport:
    """Short loxodromic from the smallest prismatic face of a 3-dimensional body."""
    claim = "ell/2 <= acosh(3+4cos(2pi/n)) from a prismatic n-gon"
    if rp.dim != 3:
        raise RealizationError("corollary46_check needs a 3-dimensional polyhedron")
    g = g or face_graph_of(rp)
    prismatic = [f for f in g.labels if is_prismatic(g, f)]
    if not prismatic:
        return _not_applicable(claim, "no prismatic face")
    face = min(prismatic, key=lambda f: (g.n_sides(f), f))
    n = g.n_sides(face)
    poly = section_polygon(rp, g, face)
    nk = nikulin_check(poly)
    order = polygon_cycle(poly)
    in_face = _skip_one_distances(poly.normals, order)
    k = int(np.argmin(in_face))
    a, b = poly.labels[order[k]], poly.labels[order[(k + 2) % n]]
    i, j = rp.index(a), rp.index(b)
    rel = hyperplane_relation(rp.normals[i], rp.normals[j])
    bound = nikulin_bound(n)
    if rel.kind != "ultraparallel":
        return VerificationReport(claim, bound, 0.0, f"faces {a},{b}", False,
                                  notes=f"faces {a},{b} are not disjoint ({rel.kind})")
    word = _pair_word(rp, i, j)
    el = element(rp, word)
    notes = [f"prismatic face {face} ({n} sides)"]
    ok = nk.verdict and el.iso.is_loxodromic and abs(el.iso.length - 2 * rel.value) <= 1e-8
    if not nk.verdict:
        notes.append("in-face side bound failed")
    ps = pair_systole(rp)
    if ps is None or ps.min_translation_length > el.iso.length + 1e-9:
        notes.append("pair_systole cross-check failed")
        ok = False
    rep = _witness_report(claim.replace("n)", f"{n})"), bound, False, el.iso.length, word, "; ".join(notes),
                          {"face": face, "in_face_distance": in_face[k],
                           "pair_systole_length": ps.min_translation_length if ps else math.nan})
    rep.verdict = rep.verdict and ok
    return rep


def theorem41_check(rp: RealizedPolyhedron, compact: bool | None = None, max_len: int = 10,
                    graph: FaceGraph | None = None) -> VerificationReport:
    """injrad < acosh(3+4cos(2pi/5)) (compact) or < acosh(7) from the best witness found."""
    if compact is None:
        compact = rp.is_compact
    bound = COMPACT_BOUND if compact else FINITE_VOLUME_BOUND
    candidates = []
    ps = pair_systole(rp)
    if ps is not None:
        candidates.append((ps.min_translation_length, ps.witness.word, "pair"))
    if rp.dim == 3 and not rp.is_simplex:
        cor = corollary46_check(rp, graph)
        if cor.data.get("applicable", True) and math.isfinite(cor.achieved):
            candidates.append((2 * cor.achieved, tuple(cor.data["word"]), "prismatic face"))
    if max_len >= 2:
        bfs = bfs_systole(rp, max_len)
        if bfs is not None:
            candidates.append((bfs.min_translation_length, bfs.witness.word, "bfs"))
    kind = "compact" if compact else "finite volume"
    claim = f"injrad < {'acosh(3+4cos(2pi/5))' if compact else 'acosh(7)'} ({kind})"
    if not candidates:
        return VerificationReport(claim, bound, math.inf, "", False, strict=True,
                                  notes=f"no loxodromic found up to word length {max_len}")
    # ties (within rounding) go to the earliest source: pair, prismatic face, bfs
    shortest = min(c[0] for c in candidates)
    length, word, source = next(c for c in candidates if c[0] <= shortest + 1e-12)
    return _witness_report(claim, bound, True, length, word, f"witness from {source} search",
                           {"max_len": max_len})


# -- finite enumerations ----------------------------------------------------------------------------


def _inner_caps(outer) -> list[int | float]:
    """Largest n_ij allowed by 1/n_0i + 1/n_0j + 1/n_ij > 1, for pairs (1,2), (2,3), (3,1)."""
    caps = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        slack = 1 - Fraction(1, outer[i]) - Fraction(1, outer[j])
        if slack <= 0:
            caps.append(INF)
        else:
            # largest integer n with 1/n > slack
            n = math.ceil(1 / slack) - 1
            caps.append(n)
    return caps


def outer_rejection(outer) -> str | None:
    """Why no inner triple fits ``outer``, or None if one does.

    Condition II only gets easier as the inner exponents grow, so the
    largest values condition I permits decide existence.
    """
    caps = _inner_caps(outer)
    pairs = ("12", "23", "31")
    for cap, pr in zip(caps, pairs):
        if cap != INF and cap < 2:
            return f"condition I leaves no n_{pr} >= 2"
    total = sum(Fraction(0) if c == INF else Fraction(1, c) for c in caps)
    if total < 1:
        return None
    shown = ", ".join(f"n_{pr} <= {c}" for c, pr in zip(caps, pairs))
    return f"condition I forces {shown}; then 1/n_12 + 1/n_23 + 1/n_31 >= {total} violates II"


def enumerate_case2_outer(n_max: int = 20) -> list[tuple[int, int, int]]:
    """Sorted outer triples (n01 <= n02 <= n03) that admit inner exponents."""
    out = []
    for t in product(range(2, n_max + 1), repeat=3):
        if list(t) != sorted(t):
            continue
        if outer_rejection(t) is None:
            out.append(t)
    return out


def inner_triples(outer, n_max: int = 20) -> list[tuple[int, int, int]]:
    """All inner (n12, n23, n31) in 2..n_max satisfying conditions I and II."""
    found = []
    pairs = ((0, 1), (1, 2), (2, 0))
    for inner in product(range(2, n_max + 1), repeat=3):
        if any(Fraction(1, outer[i]) + Fraction(1, outer[j]) + Fraction(1, inner[k]) <= 1
               for k, (i, j) in enumerate(pairs)):
            continue
        if sum(Fraction(1, x) for x in inner) < 1:
            found.append(inner)
    return found


def enumerate_case2b(n_max: int = 20) -> list[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Angle systems with outer (2,3,3), modulo swapping the faces F2, F3."""
    outer = (2, 3, 3)
    classes = set()
    for n12, n23, n31 in inner_triples(outer, n_max):
        swapped = (n31, n23, n12)  # F2 <-> F3 fixes the outer triple
        classes.add(min((n12, n23, n31), swapped))
    return [(outer, inner) for inner in sorted(classes)]


_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _spherical(a, b, c) -> bool:
    # 1/a + 1/b + 1/c > 1 in integer arithmetic
    return b * c + a * c + a * b > a * b * c


def _euclidean(a, b, c) -> bool:
    return b * c + a * c + a * b == a * b * c


def _canonical(ex: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(4)):
        m = {}
        for k, (i, j) in enumerate(_PAIRS):
            a, b = sorted((perm[i], perm[j]))
            m[(a, b)] = ex[k]
        key = tuple(m[p] for p in _PAIRS)
        if best is None or key < best:
            best = key
    return best


def _tet_gram(ex) -> np.ndarray:
    G = np.eye(4)
    for k, (i, j) in enumerate(_PAIRS):
        G[i, j] = G[j, i] = -math.cos(math.pi / ex[k])
    return G


def _vertex_kinds(ex) -> list[str] | None:
    """'finite' / 'ideal' per vertex, or None if some vertex is neither."""
    G = _tet_gram(ex)
    kinds = []
    for drop in range(4):
        keep = [i for i in range(4) if i != drop]
        ev = np.linalg.eigvalsh(G[np.ix_(keep, keep)])
        if ev[0] > 1e-9:
            kinds.append("finite")
        elif abs(ev[0]) <= 1e-9 and ev[1] > 1e-9:
            kinds.append("ideal")
        else:
            return None
    return kinds


def _tetrahedra(max_exp: int, allow_ideal: bool) -> list[tuple[int, ...]]:
    """Exponent 6-tuples (n01, n02, n03, n12, n13, n23) of hyperbolic tetrahedra.

    Every vertex figure must be a spherical (or, with ``allow_ideal``,
    Euclidean) triangle, which prunes the search before the Gram matrix is
    examined numerically.
    """
    def ok(a, b, c):
        return _spherical(a, b, c) or (allow_ideal and _euclidean(a, b, c))

    rng = range(2, max_exp + 1)
    found = set()
    for n01, n02, n12 in product(rng, repeat=3):
        if not ok(n01, n02, n12):
            continue
        for n03, n13 in product(rng, repeat=2):
            if not ok(n01, n03, n13):
                continue
            for n23 in rng:
                if not (ok(n02, n03, n23) and ok(n12, n13, n23)):
                    continue
                ex = (n01, n02, n03, n12, n13, n23)
                if gram_signature(_tet_gram(ex)) != (3, 1, 0):
                    continue
                kinds = _vertex_kinds(ex)
                if kinds is None or (not allow_ideal and "ideal" in kinds):
                    continue
                found.add(_canonical(ex))
    return sorted(found)


def _tetra_spec(ex: tuple[int, ...], name: str) -> CoxeterSpec:
    return tetrahedron_spec({(i + 1, j + 1): n for (i, j), n in zip(_PAIRS, ex)}, name)


@lru_cache(maxsize=None)
def _compact_exponents(max_exp: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_tetrahedra(max_exp, allow_ideal=False))


def enumerate_compact_tetrahedra(max_exp: int = 10) -> list[CoxeterSpec]:
    """Compact Coxeter tetrahedra with exponents up to ``max_exp``, up to relabelling."""
    return [_tetra_spec(ex, f"lanner-{k + 1}") for k, ex in enumerate(_compact_exponents(max_exp))]


@lru_cache(maxsize=None)
def _finite_volume_exponents(max_exp: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_tetrahedra(max_exp, allow_ideal=True))


def enumerate_finite_volume_tetrahedra(max_exp: int = 10) -> list[CoxeterSpec]:
    """Finite-volume Coxeter tetrahedra (ideal vertices allowed), up to relabelling."""
    return [_tetra_spec(ex, f"tetra-{k + 1}") for k, ex in enumerate(_finite_volume_exponents(max_exp))]


def canonical_exponents(spec: CoxeterSpec) -> tuple[int, ...]:
    """Relabelling-invariant key of a tetrahedron spec."""
    ex = tuple(int(spec.exponent(spec.faces[i], spec.faces[j])) for i, j in _PAIRS)
    return _canonical(ex)

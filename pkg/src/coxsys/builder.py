"""Realized Coxeter polygons and polyhedra in the hyperboloid model.

A realized body is a list of outward unit spacelike face normals n_i. The
body itself is {x : <x, n_i> <= 0 for all i}, so adjacent faces meeting at
dihedral angle theta satisfy <n_i, n_j> = -cos(theta), and the Coxeter
exponent n_ij gives theta = pi / n_ij. Vertices, adjacency and angles are
always recomputed from the normals.

Bodies enter through Coxeter data for simplices (``from_coxeter``), the
regular constructions, explicit normals, or doubling across a face.
General realization of non-simplices from angle data alone is refused.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import brentq

from .lorentz import (
    TOL_FORM,
    TOL_LIGHT,
    form,
    inner_matrix,
    normalize,
    reflection_matrix,
    transport_to_origin,
)
from .reports import VerificationReport

INF = math.inf
GRAM_TOL = 1e-9
VERTEX_TOL = 1e-8


class RealizationError(ValueError):
    """Coxeter data or normals that do not describe a hyperbolic body."""


def exponent_angle(n) -> float:
    """Dihedral angle pi/n; an infinite exponent means tangent faces (angle 0)."""
    return 0.0 if n == INF else math.pi / float(n)


def exponent_from_angle(angle: float):
    """Inverse of :func:`exponent_angle`, as an int or Fraction when rational."""
    if angle <= 1e-7:
        return INF
    x = math.pi / angle
    frac = Fraction(x).limit_denominator(60)
    if abs(float(frac) - x) <= 1e-7 * max(1.0, x):
        return int(frac) if frac.denominator == 1 else frac
    return x


def _parse_exponent(n):
    if isinstance(n, str):
        s = n.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INF
        if "/" in s:
            return Fraction(s)
        n = float(s)
    if isinstance(n, float):
        if math.isinf(n):
            return INF
        if n.is_integer():
            return int(n)
    return n


@dataclass(frozen=True)
class CoxeterSpec:
    """Face labels plus exponents n_ij for adjacent face pairs.

    Exponents are usually integers >= 2 (or ``INF`` for faces tangent at
    infinity). Bodies obtained by doubling can carry rational exponents,
    e.g. 5/2 for a doubled pi/5 angle; ``is_coxeter`` tells them apart.
    """

    name: str
    dim: int
    faces: tuple[str, ...]
    exponents: Mapping[tuple[str, str], object] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise RealizationError(f"dim must be 2 or 3, got {self.dim}")
        faces = tuple(str(f) for f in self.faces)
        if len(set(faces)) != len(faces):
            raise RealizationError("duplicate face labels")
        object.__setattr__(self, "faces", faces)
        order = {f: i for i, f in enumerate(faces)}
        clean = {}
        for (a, b), n in dict(self.exponents).items():
            if a not in order or b not in order or a == b:
                raise RealizationError(f"exponent for unknown or repeated faces ({a!r}, {b!r})")
            n = _parse_exponent(n)
            if not (n == INF or float(n) > 1.0):
                raise RealizationError(f"exponent {n!r} for ({a}, {b}) is not > 1")
            key = (a, b) if order[a] < order[b] else (b, a)
            clean[key] = n
        object.__setattr__(self, "exponents", clean)

    def exponent(self, a: str, b: str):
        key = (a, b) if self.faces.index(a) < self.faces.index(b) else (b, a)
        return self.exponents.get(key)

    @property
    def is_coxeter(self) -> bool:
        return all(n == INF or (isinstance(n, int) and n >= 2) for n in self.exponents.values())

    @property
    def is_simplex(self) -> bool:
        return len(self.faces) == self.dim + 1


@dataclass(frozen=True)
class VertexInfo:
    position: np.ndarray
    kind: str  # "finite" or "ideal"
    incident_faces: frozenset


@dataclass(frozen=True, eq=False)
class RealizedPolyhedron:
    """Outward unit normals together with the combinatorics they determine.

    ``generators`` are the normals of the Coxeter body whose reflection group
    everything lives in; ``face_words[i] = (g, w)`` says that face i has
    normal W(generators[g]) where W is the product of the reflections in the
    word w. For a body built directly these are ``(i, ())``.
    """

    spec: CoxeterSpec
    normals: np.ndarray
    vertices: tuple[VertexInfo, ...]
    adjacency: frozenset
    angles: Mapping[tuple[int, int], float]
    generators: np.ndarray
    face_words: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.spec.faces

    @property
    def n_faces(self) -> int:
        return len(self.labels)

    @property
    def is_simplex(self) -> bool:
        return self.n_faces == self.dim + 1

    @property
    def is_compact(self) -> bool:
        return all(v.kind == "finite" for v in self.vertices)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.n_faces:
                return int(label)
            raise RealizationError(f"face index {label} out of range")
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise RealizationError(f"unknown face {label!r}") from None

    def is_adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.adjacency

    def neighbors(self, i: int) -> list[int]:
        return sorted(j for j in range(self.n_faces) if j != i and self.is_adjacent(i, j))

    def gram(self) -> np.ndarray:
        return inner_matrix(self.normals)

    def reflection_word(self, i: int) -> tuple[int, ...]:
        """Word in the generators for the reflection in face i."""
        g, w = self.face_words[i]
        return reduce_word(tuple(w) + (g,) + tuple(reversed(w)))


def reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    """Cancel adjacent repeated letters (each generator is an involution)."""
    out: list[int] = []
    for x in word:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(int(x))
    return tuple(out)


# -- Gram matrices ----------------------------------------------------------------


def gram_from_coxeter(spec: CoxeterSpec) -> np.ndarray:
    """Gram matrix with -cos(pi/n_ij) off the diagonal; NaN where no exponent is given."""
    k = len(spec.faces)
    G = np.full((k, k), np.nan)
    np.fill_diagonal(G, 1.0)
    for (a, b), n in spec.exponents.items():
        i, j = spec.faces.index(a), spec.faces.index(b)
        G[i, j] = G[j, i] = -1.0 if n == INF else -math.cos(math.pi / float(n))
    if spec.is_simplex and np.isnan(G).any():
        missing = [(spec.faces[i], spec.faces[j]) for i, j in zip(*np.where(np.isnan(G))) if i < j]
        raise RealizationError(f"simplex spec {spec.name!r} lacks exponents for {missing}")
    return G


def gram_signature(G, tol: float = GRAM_TOL) -> tuple[int, int, int]:
    w = np.linalg.eigvalsh(np.asarray(G, dtype=float))
    return int(np.sum(w > tol)), int(np.sum(w < -tol)), int(np.sum(np.abs(w) <= tol))


def embed_gram(G, dim: int) -> np.ndarray:
    """Unit spacelike vectors in R^{dim,1} whose Gram matrix is G.

    Uses the eigendecomposition G = Q L Q^T, keeping the ``dim`` positive
    eigenvalues and the single negative one. Rows of the result are the
    vectors.
    """
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1] or np.isnan(G).any():
        raise RealizationError("Gram matrix must be square and fully specified")
    if G.shape[0] < dim + 1:
        raise RealizationError(f"need at least {dim + 1} vectors to embed in dimension {dim}")
    w, Q = np.linalg.eigh(G)
    pos, neg, zero = int(np.sum(w > GRAM_TOL)), int(np.sum(w < -GRAM_TOL)), int(np.sum(np.abs(w) <= GRAM_TOL))
    if pos != dim or neg != 1:
        raise RealizationError(
            f"not realizable in H^{dim}: Gram eigenvalue signs (+{pos}, -{neg}, 0x{zero}), "
            f"eigenvalues {np.array2string(w, precision=6)}"
        )
    order = np.argsort(-w)
    keep = list(order[:dim]) + [order[-1]]
    V = Q[:, keep] * np.sqrt(np.abs(w[keep]))
    err = float(np.max(np.abs(inner_matrix(V) - G)))
    if err > GRAM_TOL:
        raise RealizationError(f"Gram reconstruction error {err:.3g} exceeds {GRAM_TOL}")
    return V


# -- vertices and combinatorics -------------------------------------------------------


@dataclass(frozen=True)
class _Ray:
    direction: np.ndarray  # Euclidean unit vector in the polyhedral cone
    faces: frozenset[int]
    q: float  # Minkowski square of the Euclidean-unit direction


def _cone_rays(normals: np.ndarray) -> list[_Ray]:
    """Extreme rays of the cone {x : <x, n_i> <= 0}."""
    k, D = normals.shape
    d = D - 1
    J = form(D)
    NJ = normals @ J
    scale = np.maximum(1.0, np.linalg.norm(normals, axis=1))
    rays: dict[frozenset, _Ray] = {}
    for combo in combinations(range(k), d):
        A = NJ[list(combo)]
        _, s, Vt = np.linalg.svd(A)
        if s[-1] < 1e-9 * s[0]:
            continue
        r = Vt[-1]
        vals = NJ @ r
        tol = VERTEX_TOL * scale
        if np.all(vals <= tol):
            pass
        elif np.all(-vals <= tol):
            r, vals = -r, -vals
        else:
            continue
        incident = frozenset(int(m) for m in np.where(np.abs(vals) <= tol)[0])
        if incident in rays:
            continue
        rays[incident] = _Ray(r, incident, float(r[:-1] @ r[:-1] - r[-1] ** 2))
    return list(rays.values())


def _vertex_from_ray(ray: _Ray, labels) -> VertexInfo:
    r = ray.direction
    faces = frozenset(labels[m] for m in ray.faces)
    if abs(ray.q) <= TOL_LIGHT:
        return VertexInfo(r / r[-1], "ideal", faces)
    return VertexInfo(normalize(r), "finite", faces)


def _interior_point(rays: list[_Ray]) -> np.ndarray:
    total = np.zeros_like(rays[0].direction)
    for ray in rays:
        r = ray.direction
        total += r / r[-1] if abs(ray.q) <= TOL_LIGHT else normalize(r)
    return normalize(total)


def _check_rays(rays: list[_Ray]) -> str | None:
    if not rays:
        return "no vertices: the half-spaces do not cut out a polyhedron"
    for ray in rays:
        if ray.q > TOL_LIGHT:
            return f"hyperideal vertex at faces {sorted(ray.faces)} (infinite volume)"
    signs = {bool(ray.direction[-1] > 0) for ray in rays}
    if len(signs) > 1:
        return "vertices on both time sheets: normals are not consistently outward"
    return None


def _unit_deviation(N: np.ndarray) -> np.ndarray:
    """|<n, n> - 1| per row, relative to the row's squared Euclidean size."""
    sq = np.einsum("ij,ij->i", N, N)
    norms = sq - 2 * N[:, -1] ** 2
    return np.abs(norms - 1.0) / np.maximum(1.0, sq)


def realize(spec: CoxeterSpec, normals, generators=None, face_words=None,
            check_exponents: bool = True) -> RealizedPolyhedron:
    """Build a realized body from explicit outward normals.

    Declared exponents are validated against the measured dihedral angles,
    and every adjacent pair must carry one.
    """
    N = np.array(normals, dtype=float)
    if N.ndim != 2 or N.shape != (len(spec.faces), spec.dim + 1):
        raise RealizationError(f"normals must have shape ({len(spec.faces)}, {spec.dim + 1})")
    if not np.all(np.isfinite(N)):
        raise RealizationError("normals contain non-finite entries")
    dev = _unit_deviation(N)
    if np.max(dev) > TOL_FORM:
        raise RealizationError(f"normals are not unit spacelike (worst {np.max(dev):.3g})")
    rays = _cone_rays(N)
    problem = _check_rays(rays)
    if problem:
        raise RealizationError(problem)
    if rays[0].direction[-1] < 0:
        raise RealizationError("interior lies in the past sheet: normals point inward")
    vertices = tuple(_vertex_from_ray(r, spec.faces) for r in rays)

    share: dict[tuple[int, int], int] = {}
    for ray in rays:
        for i, j in combinations(sorted(ray.faces), 2):
            share[(i, j)] = share.get((i, j), 0) + 1
    need = 1 if spec.dim == 2 else 2
    adjacency = frozenset(p for p, c in share.items() if c >= need)
    gram = inner_matrix(N)
    angles = {}
    for i, j in sorted(adjacency):
        c = float(np.clip(-gram[i, j], -1.0, 1.0))
        angles[(i, j)] = 0.0 if c >= 1.0 - TOL_LIGHT else math.acos(c)

    if check_exponents:
        errors = _exponent_errors(spec, gram, adjacency, _entry_scale(N))
        if errors:
            raise RealizationError("; ".join(errors[:5]))

    if generators is None:
        generators = N.copy()
        face_words = tuple((i, ()) for i in range(len(spec.faces)))
    return RealizedPolyhedron(spec, N, vertices, adjacency, angles, np.asarray(generators, dtype=float),
                              tuple(face_words))


def _entry_scale(N: np.ndarray) -> np.ndarray:
    """Rounding scale of each Gram entry: product of the rows' Euclidean sizes."""
    size = np.maximum(1.0, np.linalg.norm(N, axis=1))
    return np.outer(size, size)


def _exponent_errors(spec: CoxeterSpec, gram, adjacency, scale) -> list[str]:
    errors = []
    declared = set()
    for (a, b), n in spec.exponents.items():
        i, j = spec.faces.index(a), spec.faces.index(b)
        declared.add((min(i, j), max(i, j)))
        target = -1.0 if n == INF else -math.cos(math.pi / float(n))
        if abs(gram[i, j] - target) > GRAM_TOL * scale[i, j]:
            errors.append(f"<n_{a}, n_{b}> = {gram[i, j]:.12g}, exponent {n} needs {target:.12g}")
        if (min(i, j), max(i, j)) not in adjacency:
            errors.append(f"faces {a}, {b} carry an exponent but are not adjacent")
    if spec.exponents:
        for i, j in sorted(adjacency - declared):
            errors.append(f"adjacent faces {spec.faces[i]}, {spec.faces[j]} have no exponent")
    return errors


def measured_spec(name: str, dim: int, labels, normals) -> CoxeterSpec:
    """Spec whose exponents are read off from the angles of the given normals."""
    rp = realize(CoxeterSpec(name, dim, tuple(labels)), normals, check_exponents=False)
    ex = {(rp.labels[i], rp.labels[j]): exponent_from_angle(a) for (i, j), a in rp.angles.items()}
    return CoxeterSpec(name, dim, tuple(labels), ex)


def place_canonically(normals: np.ndarray) -> np.ndarray:
    """Apply a Lorentz map so the body's vertex barycentre sits at the origin."""
    N = np.asarray(normals, dtype=float)
    rays = _cone_rays(N)
    problem = _check_rays(rays)
    if problem:
        raise RealizationError(problem)
    if rays[0].direction[-1] < 0:
        T = form(N.shape[1])  # reverse time
        N = N @ T
        rays = _cone_rays(N)
    p = _interior_point(rays)
    M = transport_to_origin(p)
    # <M n, M x> = <n, x>, so normals transform by M as well
    return N @ M.T


def from_coxeter(spec: CoxeterSpec) -> RealizedPolyhedron:
    """Realize a Coxeter simplex (triangle or tetrahedron) from its exponents."""
    if not spec.is_simplex:
        raise RealizationError(
            f"{spec.name!r}: only simplices are realized from exponents; supply normals for other bodies"
        )
    G = gram_from_coxeter(spec)
    V = embed_gram(G, spec.dim)
    return realize(spec, place_canonically(V))


def simplex_vertices(rp: RealizedPolyhedron) -> list[VertexInfo]:
    """Vertices of a simplex: the vertex opposite face i is orthogonal to the other normals."""
    if not rp.is_simplex:
        raise RealizationError("simplex_vertices needs a simplex")
    k = rp.n_faces
    J = form(rp.dim + 1)
    out = []
    for i in range(k):
        others = [j for j in range(k) if j != i]
        _, _, Vt = np.linalg.svd(rp.normals[others] @ J)
        r = Vt[-1]
        if (rp.normals[i] @ J @ r) > 0:
            r = -r
        q = float(r[:-1] @ r[:-1] - r[-1] ** 2)
        if q > TOL_LIGHT:
            raise RealizationError(f"vertex opposite {rp.labels[i]} is hyperideal: infinite volume")
        faces = frozenset(rp.labels[j] for j in others)
        if abs(q) <= TOL_LIGHT:
            out.append(VertexInfo(r / r[-1], "ideal", faces))
        else:
            out.append(VertexInfo(normalize(r), "finite", faces))
    return out


# -- polygons ------------------------------------------------------------------------------


def _side_normal(rho: float, phi: float) -> np.ndarray:
    """Line at distance rho from the origin with outward direction phi."""
    return np.array([math.cosh(rho) * math.cos(phi), math.cosh(rho) * math.sin(phi), math.sinh(rho)])


def regular_polygon(n: int, k) -> RealizedPolyhedron:
    """Regular n-gon with all angles pi/k (ideal vertices when k is INF)."""
    if n < 3:
        raise RealizationError("a polygon needs at least 3 sides")
    inv_k = 0.0 if k == INF else 1.0 / k
    # angle sum n*pi/k below (n - 2)*pi
    if not (2.0 / n + inv_k < 1.0):
        raise RealizationError(f"({n}, {k}) is not hyperbolic: need 2/n + 1/k < 1")
    cos_half = 1.0 if k == INF else math.cos(math.pi / k)
    cosh2 = (1.0 + cos_half) / (1.0 - math.cos(2 * math.pi / n))
    rho = math.acosh(math.sqrt(cosh2))
    N = np.array([_side_normal(rho, 2 * math.pi * i / n) for i in range(n)])
    labels = tuple(f"s{i}" for i in range(n))
    ex = {(labels[i], labels[(i + 1) % n]): k for i in range(n)}
    kname = "inf" if k == INF else str(k)
    return realize(CoxeterSpec(f"regular-{n}-gon-{kname}", 2, labels, ex), N)


def ideal_polygon(angles: Sequence[float], start: float = 0.0) -> RealizedPolyhedron:
    """Ideal polygon whose consecutive vertices subtend ``angles`` at the origin.

    Vertex i sits at direction start + angles[0] + ... + angles[i-1] on the
    circle at infinity; side i joins ideal vertices i and i+1.
    """
    th = [float(a) for a in angles]
    if len(th) < 3 or any(a <= 0 for a in th) or abs(sum(th) - 2 * math.pi) > 1e-9:
        raise RealizationError("ideal polygon needs >= 3 positive angles summing to 2*pi")
    if max(th) >= math.pi:
        raise RealizationError("central angles must be < pi for the origin to be interior")
    phis = start + np.concatenate([[0.0], np.cumsum(th)[:-1]])
    n = len(th)
    N = []
    for i in range(n):
        # the side with ideal endpoints at phis[i] and phis[i] + th[i]: with
        # mid-direction m and half-angle h its unit normal is
        # (cos m, sin m, cos h) / sin h, which avoids the cancellation of a
        # cross product of nearby lightlike vectors
        m = phis[i] + th[i] / 2
        h = th[i] / 2
        N.append(np.array([math.cos(m), math.sin(m), math.cos(h)]) / math.sin(h))
    labels = tuple(f"s{i}" for i in range(n))
    ex = {(labels[i], labels[(i + 1) % n]): INF for i in range(n)}
    return realize(CoxeterSpec(f"ideal-{n}-gon", 2, labels, ex), np.array(N))


def ideal_vertex_lifts(angles: Sequence[float], start: float = 0.0) -> np.ndarray:
    phis = start + np.concatenate([[0.0], np.cumsum(angles)[:-1]])
    return np.array([[math.cos(p), math.sin(p), 1.0] for p in phis])


def polygon_cycle(rp: RealizedPolyhedron) -> list[int]:
    """Side indices of a polygon in counter-clockwise order."""
    if rp.dim != 2:
        raise RealizationError("polygon_cycle needs a polygon")
    chart = [v.position[:2] / v.position[2] for v in rp.vertices]
    c = np.mean(chart, axis=0)
    mids = []
    for i, label in enumerate(rp.labels):
        pts = [p for p, v in zip(chart, rp.vertices) if label in v.incident_faces]
        m = np.mean(pts, axis=0) - c
        mids.append((math.atan2(m[1], m[0]), i))
    order = [i for _, i in sorted(mids)]
    for a, b in zip(order, order[1:] + order[:1]):
        if not rp.is_adjacent(a, b):
            raise RealizationError("polygon sides do not form a cycle")
    return order


# -- regular polyhedra -------------------------------------------------------------------


_PHI = (1 + math.sqrt(5)) / 2


def platonic_vertices(p: int, q: int) -> np.ndarray:
    """Vertices of the Euclidean Platonic solid {p, q}, scaled to the unit sphere."""
    import itertools

    signs = list(itertools.product((1, -1), repeat=3))
    if (p, q) == (3, 3):
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif (p, q) == (4, 3):
        pts = signs
    elif (p, q) == (3, 4):
        pts = [s * e for e in np.eye(3) for s in (1, -1)]
    elif (p, q) == (5, 3):
        pts = list(signs)
        for s1, s2 in itertools.product((1, -1), repeat=2):
            a, b = s1 / _PHI, s2 * _PHI
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    elif (p, q) == (3, 5):
        pts = []
        for s1, s2 in itertools.product((1, -1), repeat=2):
            a, b = s1 * 1.0, s2 * _PHI
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    else:
        raise RealizationError(f"{{{p},{q}}} is not a Platonic solid")
    pts = np.array(pts, dtype=float)
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def _regular_setup(p: int, q: int):
    from .facegraph import convex_hull_faces

    W = platonic_vertices(p, q)
    faces = convex_hull_faces(W)
    U = np.array([n for n, _ in faces])
    c0 = float(U[0] @ W[faces[0][1][0]])
    return W, faces, U, c0


def _regular_normals(U: np.ndarray, c0: float, R: float) -> np.ndarray:
    s = math.tanh(R) * c0
    N = np.hstack([U, np.full((len(U), 1), s)])
    return N / math.sqrt(1.0 - s * s)


def regular_dihedral_limits(p: int, q: int) -> tuple[float, float]:
    """(ideal-limit, Euclidean) dihedral angles of {p, q}."""
    _, faces, U, _ = _regular_setup(p, q)
    G = U @ U.T
    np.fill_diagonal(G, -2)
    cos_alpha = float(np.max(G))  # adjacent faces have the closest normals
    euclid = math.pi - math.acos(cos_alpha)
    ideal = (q - 2) * math.pi / q
    return ideal, euclid


def regular_polyhedron(p: int, q: int, dihedral: float) -> RealizedPolyhedron:
    """Compact regular polyhedron {p, q} with all dihedral angles ``dihedral``.

    The Euclidean solid is inscribed in the sphere of hyperbolic radius R
    about the origin; R is found by root-finding so that the dihedral angle
    matches.
    """
    ideal, euclid = regular_dihedral_limits(p, q)
    if not (ideal < dihedral < euclid):
        raise RealizationError(
            f"dihedral {dihedral:.6g} outside the feasible interval ({ideal:.6g}, {euclid:.6g}) for {{{p},{q}}}"
        )
    W, faces, U, c0 = _regular_setup(p, q)
    G = U @ U.T
    np.fill_diagonal(G, -2)
    cos_alpha = float(np.max(G))

    def excess(R):
        s = math.tanh(R) * c0
        cos_theta = -(cos_alpha - s * s) / (1.0 - s * s)
        return math.acos(max(-1.0, min(1.0, cos_theta))) - dihedral

    R = brentq(excess, 1e-12, 40.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    N = _regular_normals(U, c0, R)
    labels = tuple(f"F{i:02d}" for i in range(len(faces)))
    n_exp = exponent_from_angle(dihedral)
    name = f"regular-{p}-{q}-{n_exp}"
    rp = realize(CoxeterSpec(name, 3, labels), N, check_exponents=False)
    ex = {(labels[i], labels[j]): n_exp for i, j in rp.adjacency}
    return realize(CoxeterSpec(name, 3, labels, ex), N)


# -- doubling ------------------------------------------------------------------------------------


def _prime(label: str, taken: set[str]) -> str:
    out = label + "'"
    while out in taken:
        out += "'"
    return out


def reflect_polyhedron(rp: RealizedPolyhedron, face) -> RealizedPolyhedron:
    """The union of the body and its mirror image across ``face``.

    The union is convex when every dihedral angle at the mirror is at most
    pi/2; faces perpendicular to the mirror merge with their images.
    """
    m = rp.index(face)
    for j in rp.neighbors(m):
        a = rp.angles[(min(m, j), max(m, j))]
        if a > math.pi / 2 + 1e-9:
            raise RealizationError(f"angle {a:.6g} at mirror face {rp.labels[m]} exceeds pi/2: union not convex")
    R = reflection_matrix(rp.normals[m])
    g_m, w_m = rp.face_words[m]
    mirror_word = reduce_word(tuple(w_m) + (g_m,) + tuple(reversed(w_m)))

    keep = [j for j in range(rp.n_faces) if j != m]
    labels = [rp.labels[j] for j in keep]
    normals = [rp.normals[j] for j in keep]
    words = [rp.face_words[j] for j in keep]
    taken = set(rp.labels)
    for j in keep:
        img = R @ rp.normals[j]
        if any(np.max(np.abs(img - n)) <= 1e-9 for n in normals):
            continue
        lab = _prime(rp.labels[j], taken)
        taken.add(lab)
        labels.append(lab)
        normals.append(img)
        g, w = rp.face_words[j]
        words.append((g, reduce_word(mirror_word + tuple(w))))
    N = np.array(normals)
    spec = measured_spec(f"{rp.name}|{rp.labels[m]}", rp.dim, labels, N)
    return realize(spec, N, generators=rp.generators, face_words=tuple(words))


# -- validation --------------------------------------------------------------------------------


def validate(rp: RealizedPolyhedron) -> VerificationReport:
    """Re-check every realization invariant from the normals alone."""
    N = rp.normals
    notes = []
    worst = 0.0
    unit = float(np.max(_unit_deviation(N)))
    worst = max(worst, unit)
    if unit > TOL_FORM:
        notes.append(f"unit-norm violation {unit:.3g}")

    gram = inner_matrix(N)
    scale = _entry_scale(N)
    rays = _cone_rays(N)
    problem = _check_rays(rays)
    interior_ok = False
    if problem:
        notes.append("interior-point check failed: " + problem)
    elif rays[0].direction[-1] < 0:
        notes.append("interior-point check failed: interior is past-pointing")
    else:
        p = _interior_point(rays)
        margin = float(np.max(N @ form(N.shape[1]) @ p))
        interior_ok = margin < 0
        if not interior_ok:
            notes.append(f"interior-point check failed: max <n_i, p> = {margin:.3g}")

    adjacency = rp.adjacency
    if not problem:
        share: dict[tuple[int, int], int] = {}
        for ray in rays:
            for i, j in combinations(sorted(ray.faces), 2):
                share[(i, j)] = share.get((i, j), 0) + 1
        need = 1 if rp.dim == 2 else 2
        adjacency = frozenset(pr for pr, c in share.items() if c >= need)
        if adjacency != rp.adjacency:
            notes.append("stored adjacency differs from the one the normals determine")
    for (a, b), n in rp.spec.exponents.items():
        i, j = rp.labels.index(a), rp.labels.index(b)
        target = -1.0 if n == INF else -math.cos(math.pi / float(n))
        dev = abs(gram[i, j] - target) / scale[i, j]
        worst = max(worst, dev)
        if dev > GRAM_TOL:
            notes.append(f"Gram entry ({a},{b}) off by {dev:.3g}")
    ok = not notes
    return VerificationReport(
        claim=f"realization of {rp.name} is valid",
        bound=GRAM_TOL,
        achieved=worst,
        witness=f"{rp.n_faces} faces, {len(rp.vertices)} vertices",
        verdict=ok and interior_ok,
        notes="; ".join(notes),
    )


# -- JSON spec files ------------------------------------------------------------------------------


def _exponent_to_json(n):
    if n == INF:
        return "inf"
    if isinstance(n, Fraction):
        return f"{n.numerator}/{n.denominator}"
    return n


def polyhedron_to_json(rp: RealizedPolyhedron, include_normals: bool = True) -> dict:
    obj = {
        "name": rp.name,
        "dim": rp.dim,
        "faces": list(rp.labels),
        "coxeter": [[a, b, _exponent_to_json(n)] for (a, b), n in rp.spec.exponents.items()],
    }
    if include_normals:
        obj["normals"] = [[float(x) for x in row] for row in rp.normals]
    return obj


def polyhedron_from_json(obj: Mapping) -> RealizedPolyhedron:
    try:
        name = str(obj.get("name", "unnamed"))
        dim = int(obj["dim"])
        faces = [str(f) for f in obj["faces"]]
        ex = {}
        for entry in obj.get("coxeter", []):
            a, b, n = entry
            ex[(str(a), str(b))] = n
    except (KeyError, TypeError, ValueError) as exc:
        raise RealizationError(f"malformed polyhedron spec: {exc}") from exc
    spec = CoxeterSpec(name, dim, tuple(faces), ex)
    if obj.get("normals") is not None:
        return realize(spec, obj["normals"])
    return from_coxeter(spec)


def load_polyhedron(path) -> RealizedPolyhedron:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RealizationError(f"invalid JSON: {exc}") from exc
    return polyhedron_from_json(obj)


def triangle_spec(p, q, r, name: str | None = None) -> CoxeterSpec:
    """Triangle with angles pi/p, pi/q, pi/r at the vertices opposite sides a, b, c.

    Side pair (b, c) meets at the vertex with angle pi/p, (a, c) at pi/q
    and (a, b) at pi/r.
    """
    vals = [_parse_exponent(x) for x in (p, q, r)]
    # exact arithmetic so that Euclidean triples such as (2, 3, 6) sum to exactly 1
    inv = sum(Fraction(0) if x == INF else 1 / (Fraction(x) if isinstance(x, (int, Fraction)) else x)
              for x in vals)
    if not inv < 1:
        raise RealizationError(f"triangle ({p},{q},{r}) is not hyperbolic: 1/p + 1/q + 1/r = {float(inv):.6g}")
    tag = "-".join("inf" if x == INF else str(x) for x in vals)
    return CoxeterSpec(name or f"triangle-{tag}", 2, ("a", "b", "c"),
                       {("b", "c"): vals[0], ("a", "c"): vals[1], ("a", "b"): vals[2]})


def tetrahedron_spec(exponents: Mapping[tuple[int, int], object], name: str) -> CoxeterSpec:
    """Tetrahedron with faces F1..F4 and exponents keyed by 1-based pairs."""
    faces = ("F1", "F2", "F3", "F4")
    ex = {(f"F{i}", f"F{j}"): n for (i, j), n in exponents.items()}
    return CoxeterSpec(name, 3, faces, ex)

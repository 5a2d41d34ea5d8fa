"""Combinatorics of polyhedral 1-skeleta, seen through their faces.

A :class:`FaceGraph` stores, for every face, the cyclic list of faces that
share an edge with it. Vertices are not given separately; they are traced
as orbits of face corners, which requires the cyclic lists to be oriented
consistently. Lists that are locally reversed relative to their neighbours
are flipped on ingestion when the orientation can be decided from the
neighbouring corners (always possible for trivalent graphs).

Side counts: with trivalent vertices every edge bounds two faces, so the
total number of sides is 2|E|, and 3|V| = 2|E| forces |E| to be divisible
by 3, hence the side total is divisible by 6.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .reports import VerificationReport


class FaceGraphError(ValueError):
    """Malformed or inconsistent face-adjacency data."""


class FaceGraph:
    """Faces with cyclically ordered neighbour lists."""

    def __init__(self, faces: Mapping[str, Sequence[str]], name: str = ""):
        self.name = name
        raw = {str(k): tuple(str(x) for x in v) for k, v in faces.items()}
        _check_symmetric(raw)
        self.faces: dict[str, tuple[str, ...]] = _orient(raw)
        self.labels: tuple[str, ...] = tuple(sorted(self.faces))
        self.edges = frozenset(frozenset((f, a)) for f, nb in self.faces.items() for a in nb)
        self.vertices: tuple[tuple[str, ...], ...] = _trace_vertices(self.faces)
        chi = len(self.vertices) - len(self.edges) + len(self.faces)
        if chi != 2:
            raise FaceGraphError(f"not a sphere: V - E + F = {chi}")

    def __repr__(self):
        return f"FaceGraph({self.name or '?'}: F={len(self.faces)}, E={len(self.edges)}, V={len(self.vertices)})"

    def n_sides(self, face: str) -> int:
        return len(self.faces[face])

    def neighbors(self, face: str) -> tuple[str, ...]:
        if face not in self.faces:
            raise FaceGraphError(f"unknown face {face!r}")
        return self.faces[face]

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def vertex_degrees(self) -> list[int]:
        return [len(v) for v in self.vertices]

    def to_json(self) -> dict:
        return {"faces": {f: list(self.faces[f]) for f in self.labels}}

    @classmethod
    def from_json(cls, obj: Mapping, name: str = "") -> "FaceGraph":
        if not isinstance(obj, Mapping) or "faces" not in obj or not isinstance(obj["faces"], Mapping):
            raise FaceGraphError('face-graph JSON needs a "faces" object')
        return cls(obj["faces"], name=name or str(obj.get("name", "")))

    @classmethod
    def load(cls, path) -> "FaceGraph":
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FaceGraphError(f"invalid JSON: {exc}") from exc
        return cls.from_json(obj)


def _check_symmetric(faces: dict[str, tuple[str, ...]]) -> None:
    for f, nb in faces.items():
        if len(nb) < 3:
            raise FaceGraphError(f"face {f!r} has fewer than 3 sides")
        if len(set(nb)) != len(nb):
            raise FaceGraphError(f"face {f!r} lists a neighbour twice")
        for a in nb:
            if a == f:
                raise FaceGraphError(f"face {f!r} is adjacent to itself")
            if a not in faces:
                raise FaceGraphError(f"face {f!r} lists unknown face {a!r}")
            if f not in faces[a]:
                raise FaceGraphError(f"adjacency not symmetric: {f!r} -> {a!r}")


def _pred(cycle: tuple[str, ...], x: str) -> str:
    return cycle[cycle.index(x) - 1]


def _succ(cycle: tuple[str, ...], x: str) -> str:
    return cycle[(cycle.index(x) + 1) % len(cycle)]


def _relative_orientation(f_cycle, f, a, a_cycle) -> int:
    """+1 if a's list agrees with f's orientation, -1 if reversed, 0 if undecided."""
    p, b = _pred(f_cycle, a), _succ(f_cycle, a)
    x, y = _pred(a_cycle, f), _succ(a_cycle, f)
    agree = x == b or y == p
    flip = y == b or x == p
    if agree and not flip:
        return 1
    if flip and not agree:
        return -1
    return 0


def _orient(faces: dict[str, tuple[str, ...]]) -> dict[str, tuple[str, ...]]:
    start = min(faces)
    out = {start: faces[start]}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for a in out[f]:
            if a in out:
                continue
            sign = _relative_orientation(out[f], f, a, faces[a])
            out[a] = faces[a] if sign >= 0 else tuple(reversed(faces[a]))
            queue.append(a)
    if len(out) != len(faces):
        raise FaceGraphError("face graph is disconnected")
    for f, nb in out.items():
        for a in nb:
            if _relative_orientation(nb, f, a, out[a]) < 0:
                raise FaceGraphError(f"inconsistent cyclic orders around edge {f!r}|{a!r}")
    return out


def _trace_vertices(faces: dict[str, tuple[str, ...]]) -> tuple[tuple[str, ...], ...]:
    # A corner (f, i) sits between the edges f|nb[i] and f|nb[i+1]; the next
    # corner around the same vertex lies in nb[i], just before f.
    seen: set[tuple[str, int]] = set()
    vertices = []
    for f in sorted(faces):
        for i in range(len(faces[f])):
            if (f, i) in seen:
                continue
            orbit = []
            corner = (f, i)
            while corner not in seen:
                seen.add(corner)
                g, k = corner
                orbit.append(g)
                a = faces[g][k]
                corner = (a, (faces[a].index(g) - 1) % len(faces[a]))
            if corner != (f, i):
                raise FaceGraphError(f"corner orbit from {f!r} does not close")
            if len(set(orbit)) != len(orbit) or len(orbit) < 3:
                raise FaceGraphError(f"degenerate vertex {orbit!r}")
            vertices.append(tuple(orbit))
    return tuple(vertices)


# -- basic counts -------------------------------------------------------------


@dataclass(frozen=True)
class EulerStats:
    V: int
    E: int
    F: int
    avg_sides: float
    side_sum: int


def is_simple_trivalent(g: FaceGraph) -> bool:
    return all(d == 3 for d in g.vertex_degrees())


def euler_stats(g: FaceGraph) -> EulerStats:
    if not is_simple_trivalent(g):
        raise FaceGraphError("euler_stats needs a simple trivalent graph")
    side_sum = sum(len(nb) for nb in g.faces.values())
    V, E, F = len(g.vertices), len(g.edges), len(g.faces)
    assert side_sum == 2 * E and 3 * V == 2 * E
    return EulerStats(V=V, E=E, F=F, avg_sides=2 * E / F, side_sum=side_sum)


def lemma33_witness(g: FaceGraph) -> str:
    """A face with at most five sides (fewest sides, ties broken by label)."""
    best = min(g.labels, key=lambda f: (g.n_sides(f), f))
    if g.n_sides(best) > 5:
        raise RuntimeError(f"no face with <= 5 sides in {g!r}; graph ingestion is broken")
    return best


# -- prismatic faces ------------------------------------------------------------


def is_prismatic(g: FaceGraph, face: str) -> bool | None:
    """Whether ``face`` is prismatic; ``None`` for triangles, where it is undefined."""
    nb = g.neighbors(face)
    n = len(nb)
    if n <= 3:
        return None
    return _bad_pair(g, face) is None


def _bad_pair(g: FaceGraph, face: str) -> tuple[int, int] | None:
    """Smallest (i, j) with cyclically non-consecutive neighbours i, j adjacent."""
    nb = g.faces[face]
    n = len(nb)
    for i, j in combinations(range(n), 2):
        if (j - i) % n in (1, n - 1):
            continue
        if g.adjacent(nb[i], nb[j]):
            return i, j
    return None


@dataclass(frozen=True)
class RegionReport:
    bounding_faces: tuple[str, str, str]
    interior_faces: frozenset[str]
    all_interior_prismatic: bool
    iterations: int = 1


def _components(g: FaceGraph, removed: set[str]) -> list[frozenset[str]]:
    comps = []
    left = [f for f in g.labels if f not in removed]
    seen: set[str] = set()
    for s in left:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            f = stack.pop()
            for a in g.faces[f]:
                if a not in removed and a not in comp:
                    comp.add(a)
                    stack.append(a)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def find_prismatic_region(g: FaceGraph, start: str | None = None) -> RegionReport | None:
    """Three non-prismatic faces bounding a region made only of prismatic faces.

    Returns ``None`` when every face is prismatic. Otherwise the reduction
    starts from the first non-prismatic face (or ``start``), cuts along the
    3-circuit it forms with two adjacent non-consecutive neighbours, and keeps
    shrinking the region into the side away from the previous circuit until
    no non-prismatic face remains inside.
    """
    if not is_simple_trivalent(g):
        raise FaceGraphError("find_prismatic_region needs a simple trivalent graph")
    if any(g.n_sides(f) == 3 for f in g.labels):
        raise FaceGraphError("find_prismatic_region needs a graph without triangular faces")

    bad = [f for f in g.labels if not is_prismatic(g, f)]
    if not bad:
        return None
    f = start if start is not None else bad[0]
    if is_prismatic(g, f):
        raise FaceGraphError(f"start face {f!r} is prismatic")

    nb = g.faces[f]
    i, j = _bad_pair(g, f)
    circuit = (f, nb[i], nb[j])
    inside = next(c for c in _components(g, set(circuit)) if nb[i + 1] in c)
    outside = frozenset(g.labels) - inside - set(circuit)

    for iteration in range(1, len(g.labels) + 1):
        inner_bad = sorted(h for h in inside if not is_prismatic(g, h))
        if not inner_bad:
            return RegionReport(circuit, inside, True, iteration)
        h = inner_bad[0]
        nb = g.faces[h]
        k, l = _bad_pair(g, h)
        new_circuit = (h, nb[k], nb[l])
        comps = _components(g, set(new_circuit))
        new_inside = next(c for c in comps if not (c & outside))
        assert new_inside < inside, "region failed to shrink"
        outside = frozenset(g.labels) - new_inside - set(new_circuit)
        inside = new_inside
        circuit = new_circuit
    raise RuntimeError("prismatic-region reduction did not terminate")


def theorem31_check(g: FaceGraph, compact: bool) -> VerificationReport:
    """Existence of a prismatic face (a prismatic 4- or 5-gon when compact)."""
    claim = "prismatic 4- or 5-gon exists" if compact else "prismatic face exists"
    problems = []
    if not is_simple_trivalent(g):
        problems.append("graph is not simple trivalent")
    if any(g.n_sides(f) == 3 for f in g.labels):
        problems.append("graph has triangular faces")
    if problems:
        return VerificationReport(claim, bound=5.0, achieved=math.nan, witness="", verdict=False,
                                  notes="precondition violated: " + "; ".join(problems))
    candidates = [f for f in g.labels if is_prismatic(g, f)]
    if compact:
        candidates = [f for f in candidates if g.n_sides(f) <= 5]
    if not candidates:
        return VerificationReport(claim, bound=5.0, achieved=math.nan, witness="", verdict=False,
                                  notes="no witness face found")
    w = min(candidates, key=lambda f: (g.n_sides(f), f))
    bound = 5.0 if compact else float(max(g.n_sides(f) for f in g.labels))
    return VerificationReport(claim, bound=bound, achieved=float(g.n_sides(w)),
                              witness=f"face {w} ({g.n_sides(w)} sides)", verdict=True,
                              data={"prismatic_faces": len(candidates)})


# -- constructions ----------------------------------------------------------------


def convex_hull_faces(points) -> list[tuple[np.ndarray, list[int]]]:
    """Faces of the convex hull as (outward unit normal, ccw vertex indices)."""
    from scipy.spatial import ConvexHull

    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    groups: dict[tuple, set[int]] = {}
    normals: dict[tuple, np.ndarray] = {}
    for simplex, eq in zip(hull.simplices, hull.equations):
        key = tuple(np.round(eq, 6))
        groups.setdefault(key, set()).update(int(s) for s in simplex)
        normals[key] = eq[:3]
    faces = []
    for key in sorted(groups):
        idx = sorted(groups[key])
        n = normals[key] / np.linalg.norm(normals[key])
        c = pts[idx].mean(axis=0)
        e1 = pts[idx[0]] - c
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        ang = [math.atan2((pts[v] - c) @ e2, (pts[v] - c) @ e1) for v in idx]
        faces.append((n, [v for _, v in sorted(zip(ang, idx))]))
    return faces


def from_points(points, name: str = "", prefix: str = "F") -> FaceGraph:
    """Face graph of the convex hull of ``points``."""
    faces = convex_hull_faces(points)
    labels = [f"{prefix}{i:02d}" for i in range(len(faces))]
    edge_owner: dict[frozenset, list[int]] = {}
    for fi, (_, verts) in enumerate(faces):
        for a, b in zip(verts, verts[1:] + verts[:1]):
            edge_owner.setdefault(frozenset((a, b)), []).append(fi)
    cycles = {}
    for fi, (_, verts) in enumerate(faces):
        nb = []
        for a, b in zip(verts, verts[1:] + verts[:1]):
            other = [x for x in edge_owner[frozenset((a, b))] if x != fi]
            nb.append(labels[other[0]])
        cycles[labels[fi]] = nb
    return FaceGraph(cycles, name=name)


def from_triangulation(triangles: Iterable[Sequence[str]], name: str = "") -> FaceGraph:
    """Face graph dual to an oriented triangulation of the sphere.

    Each triangulation vertex becomes a face; its neighbours are the link of
    the vertex in cyclic order.
    """
    succ: dict[str, dict[str, str]] = {}
    for tri in triangles:
        a, b, c = tri
        for v, x, y in ((a, b, c), (b, c, a), (c, a, b)):
            succ.setdefault(v, {})[x] = y
    cycles = {}
    for v, nxt in succ.items():
        first = min(nxt)
        cyc = [first]
        while True:
            y = nxt[cyc[-1]]
            if y == first:
                break
            cyc.append(y)
        if len(cyc) != len(nxt):
            raise FaceGraphError(f"link of {v!r} is not a single cycle")
        cycles[v] = cyc
    return FaceGraph(cycles, name=name)


def face_graph_of(rp) -> FaceGraph:
    """Face graph of a realized 3-dimensional polyhedron.

    Neighbours of each face are ordered counter-clockwise about its outward
    normal in the projective (Klein) chart.
    """
    if rp.dim != 3:
        raise FaceGraphError("face graphs are defined for 3-dimensional polyhedra")
    chart = {v.incident_faces: v.position[:3] / v.position[3] for v in rp.vertices}
    cycles = {}
    for i, label in enumerate(rp.labels):
        verts = [pos for fs, pos in chart.items() if label in fs]
        c = np.mean(verts, axis=0)
        outward = rp.normals[i][:3] / np.linalg.norm(rp.normals[i][:3])
        entries = []
        for j in rp.neighbors(i):
            other = rp.labels[j]
            mid = np.mean([pos for fs, pos in chart.items() if label in fs and other in fs], axis=0)
            entries.append((mid - c, other))
        e1 = entries[0][0] / np.linalg.norm(entries[0][0])
        e2 = np.cross(outward, e1)
        entries.sort(key=lambda t: math.atan2(t[0] @ e2, t[0] @ e1))
        cycles[label] = [lab for _, lab in entries]
    return FaceGraph(cycles, name=rp.name)

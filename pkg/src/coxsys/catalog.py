"""Built-in polyhedra and face graphs, constructed on demand.

Every entry is a recipe (``kind`` plus parameters), never a table of
numbers: the compact tetrahedra in particular come from the enumerator at
first use, so their count stays an executable claim.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any

import numpy as np

from .builder import (
    INF,
    RealizedPolyhedron,
    from_coxeter,
    ideal_polygon,
    platonic_vertices,
    polyhedron_to_json,
    regular_polygon,
    regular_polyhedron,
    tetrahedron_spec,
    triangle_spec,
)
from .facegraph import FaceGraph, face_graph_of, from_points, from_triangulation

# T8 as used here has n34 = 2. With n34 = 4 the vertex F1 F3 F4 has the
# non-spherical exponent triple (3, 4, 4), so that data does not describe a
# compact tetrahedron; n34 = 2 is the only choice that reproduces the quoted
# word length 1.66131.
T8_EXPONENTS = {(1, 2): 2, (1, 3): 3, (1, 4): 4, (2, 3): 5, (2, 4): 3, (3, 4): 2}
T8_STATED_EXPONENTS = {(1, 2): 2, (1, 3): 3, (1, 4): 4, (2, 3): 5, (2, 4): 3, (3, 4): 4}
# the T8 word rho3 rho4 rho2 rho1 rho4 rho2, with faces numbered from 0
T8_WORD = (2, 3, 1, 0, 3, 1)


class CatalogError(KeyError):
    """Unknown catalog entry."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    description: str = ""

    @property
    def is_graph_only(self) -> bool:
        return self.kind == "FaceGraphOnly"

    @property
    def is_family(self) -> bool:
        return self.kind == "TetrahedronFamily"

    def build(self):
        return _build(self.name)

    def summary(self) -> dict:
        return {"name": self.name, "kind": self.kind, "description": self.description}


# -- face graph constructions ------------------------------------------------------------


def _octahedron_triangles(names: dict[str, str], flip: bool) -> list[tuple[str, str, str]]:
    """Oriented faces of the octahedron with vertices named by +x, -x, +y, ... ."""
    tris = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                a = names[("+" if sx > 0 else "-") + "x"]
                b = names[("+" if sy > 0 else "-") + "y"]
                c = names[("+" if sz > 0 else "-") + "z"]
                ccw = sx * sy * sz > 0
                if ccw == flip:
                    a, b = b, a
                tris.append((a, b, c))
    return tris


def _glued_octahedra(count: int) -> FaceGraph:
    """Dual of a chain of octahedra, each glued to the next along a triangle.

    Consecutive octahedra share the triangle +x +y +z of the later one, which
    is the triangle -x -y -z of the earlier one. The glued triangles' vertices
    become hexagons whose neighbours across the cut are adjacent: these are
    non-prismatic faces.
    """
    tris: list[tuple[str, str, str]] = []
    prev = None
    for k in range(count):
        names = {}
        for axis, hub in zip("xyz", "ABC"):
            names["+" + axis] = prev[axis] if prev else f"{hub}{k}"
            names["-" + axis] = f"{hub}{k + 1}" if k + 1 < count else f"{axis.upper()}{k}"
        # the shared triangle is -x -y -z (negatively oriented) in the earlier
        # copy and +x +y +z in the later one, so orientations already match up
        tris.extend(_octahedron_triangles(names, flip=False))
        prev = {axis: names["-" + axis] for axis in "xyz"}
    # remove each glued triangle from both octahedra
    counts: dict[frozenset, int] = {}
    for t in tris:
        counts[frozenset(t)] = counts.get(frozenset(t), 0) + 1
    kept = [t for t in tris if counts[frozenset(t)] == 1]
    return from_triangulation(kept)


def _quad_example() -> FaceGraph:
    """A quadrilateral face Q whose opposite neighbours A, C are adjacent.

    In the dual triangulation Q is a degree-4 vertex on the separating
    triangle Q A C; each side of that triangle is filled by one extra vertex
    and an octahedron with a face removed, so no triangular faces appear.
    """
    tris = [("Q", "A", "X"), ("Q", "X", "C"), ("Q", "C", "Y"), ("Q", "Y", "A")]
    for a, b, c, tag in (("A", "X", "C", "1"), ("C", "Y", "A", "2")):
        names = {"+x": a, "+y": b, "+z": c, "-x": f"{a}{tag}", "-y": f"{b}{tag}", "-z": f"{c}{tag}"}
        tris += [t for t in _octahedron_triangles(names, flip=False) if set(t) != {a, b, c}]
    return from_triangulation(tris)


def _prism_points(n: int) -> np.ndarray:
    ang = 2 * math.pi * np.arange(n) / n
    ring = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return np.vstack([np.hstack([ring, np.ones((n, 1))]), np.hstack([ring, -np.ones((n, 1))])])


def _truncated_icosahedron_points() -> np.ndarray:
    V = platonic_vertices(3, 5)
    d = np.linalg.norm(V[:, None] - V[None], axis=2)
    edge = np.min(d[d > 1e-9])
    pts = []
    for i, j in combinations(range(len(V)), 2):
        if abs(d[i, j] - edge) < 1e-9:
            pts.append(V[i] + (V[j] - V[i]) / 3)
            pts.append(V[i] + 2 * (V[j] - V[i]) / 3)
    return np.array(pts)


def _square_pyramid_points() -> np.ndarray:
    return np.array([[1, 1, 0], [1, -1, 0], [-1, -1, 0], [-1, 1, 0], [0, 0, 1.5]], dtype=float)


_GRAPH_RECIPES = {
    "cube": lambda: from_points(platonic_vertices(4, 3)),
    "dodecahedron": lambda: from_points(platonic_vertices(5, 3)),
    "pentagonal-prism": lambda: from_points(_prism_points(5)),
    "truncated-icosahedron": lambda: from_points(_truncated_icosahedron_points()),
    "square-pyramid": lambda: from_points(_square_pyramid_points()),
    "fig1-example": lambda: _glued_octahedra(2),
    "fig1-nested": lambda: _glued_octahedra(3),
    "fig1-quad": _quad_example,
}


# -- the entry table -----------------------------------------------------------------------------


def _entries() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}

    def add(name, kind, description, **params):
        out[name] = CatalogEntry(name, kind, params, description)

    add("T8", "Tetrahedron", "compact tetrahedron without a triangle subgroup (n34 = 2, see notes)",
        exponents={f"{i}{j}": n for (i, j), n in T8_EXPONENTS.items()},
        stated_exponents={f"{i}{j}": n for (i, j), n in T8_STATED_EXPONENTS.items()},
        word_1based=[x + 1 for x in T8_WORD])
    for k in range(1, 10):
        add(f"lanner-{k}", "Tetrahedron", f"compact Coxeter tetrahedron #{k} in enumeration order", index=k)
    add("all-compact-tetrahedra", "TetrahedronFamily", "every compact Coxeter tetrahedron", max_exp=10)
    for t in [(2, 3, 7), (2, 4, 5), (3, 3, 4), (4, 4, 4), (2, 3, INF)]:
        tag = "-".join("inf" if x == INF else str(x) for x in t)
        add(f"triangle-{tag}", "TriangleGroup", f"Coxeter triangle with angles pi/{t[0]}, pi/{t[1]}, pi/{t[2]}",
            pqr=["inf" if x == INF else x for x in t])
    for n, k, name in [(5, 2, "pentagon-right"), (6, 2, "hexagon-right"), (8, 3, "octagon-3"),
                       (7, 2, "heptagon-right"), (5, INF, "ideal-regular-pentagon")]:
        add(name, "RegularPolygon", f"regular {n}-gon with angles {'0' if k == INF else f'pi/{k}'}",
            n=n, k="inf" if k == INF else k)
    add("ideal-square", "IdealPolygon", "ideal quadrilateral with four right central angles",
        angles=[math.pi / 2] * 4)
    add("ideal-hexagon", "IdealPolygon", "regular ideal hexagon", angles=[math.pi / 3] * 6)
    add("dodecahedron-right", "RegularPolyhedron", "right-angled regular dodecahedron",
        p=5, q=3, dihedral="pi/2")
    add("dodecahedron-2pi5", "RegularPolyhedron", "regular dodecahedron with dihedral angles 2pi/5",
        p=5, q=3, dihedral="2pi/5")
    add("cube-2pi5", "RegularPolyhedron", "regular cube with dihedral angles 2pi/5 (not Coxeter)",
        p=4, q=3, dihedral="2pi/5")
    descriptions = {
        "cube": "cube face graph",
        "dodecahedron": "dodecahedron face graph",
        "pentagonal-prism": "pentagonal prism face graph",
        "truncated-icosahedron": "truncated icosahedron face graph (12 pentagons, 20 hexagons)",
        "square-pyramid": "square pyramid face graph (apex has degree 4)",
        "fig1-example": "two octahedra glued along a triangle, dualized: 3 non-prismatic hexagons",
        "fig1-nested": "three octahedra glued in a chain, dualized: nested non-prismatic circuits",
        "fig1-quad": "graph with a non-prismatic quadrilateral Q (neighbours A, C adjacent)",
    }
    for name, desc in descriptions.items():
        add(name, "FaceGraphOnly", desc)
    return out


ENTRIES = _entries()


def names() -> list[str]:
    return sorted(ENTRIES)


def get(name: str) -> CatalogEntry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}") from None


def _angle(text: str) -> float:
    return {"pi/2": math.pi / 2, "2pi/5": 2 * math.pi / 5}[text]


def _exp(x):
    return INF if x == "inf" else x


@lru_cache(maxsize=None)
def _build(name: str):
    from .verify import enumerate_compact_tetrahedra

    e = get(name)
    p = e.params
    if e.kind == "FaceGraphOnly":
        g = _GRAPH_RECIPES[name]()
        return FaceGraph(g.faces, name=name)
    if e.kind == "TetrahedronFamily":
        return tuple(from_coxeter(s) for s in enumerate_compact_tetrahedra(p["max_exp"]))
    if e.kind == "Tetrahedron":
        if "index" in p:
            return from_coxeter(enumerate_compact_tetrahedra()[p["index"] - 1])
        ex = {(int(k[0]), int(k[1])): n for k, n in p["exponents"].items()}
        return from_coxeter(tetrahedron_spec(ex, name))
    if e.kind == "TriangleGroup":
        return from_coxeter(triangle_spec(*[_exp(x) for x in p["pqr"]], name=name))
    if e.kind == "RegularPolygon":
        return regular_polygon(p["n"], _exp(p["k"]))
    if e.kind == "IdealPolygon":
        return ideal_polygon(p["angles"])
    if e.kind == "RegularPolyhedron":
        return regular_polyhedron(p["p"], p["q"], _angle(p["dihedral"]))
    raise CatalogError(f"entry {name!r} has unknown kind {e.kind!r}")


def build(name: str):
    """The realized polyhedron, face graph, or tuple of tetrahedra for ``name``."""
    return _build(name)


def polyhedron(name: str) -> RealizedPolyhedron:
    obj = build(name)
    if not isinstance(obj, RealizedPolyhedron):
        raise CatalogError(f"catalog entry {name!r} is not a single polyhedron")
    return obj


def graph(name: str) -> FaceGraph:
    """Face graph of ``name``: stored directly, or read off a 3-dimensional polyhedron."""
    obj = build(name)
    if isinstance(obj, FaceGraph):
        return obj
    if isinstance(obj, RealizedPolyhedron) and obj.dim == 3:
        return face_graph_of(obj)
    raise CatalogError(f"catalog entry {name!r} has no face graph")


def show(name: str) -> dict:
    e = get(name)
    out = {"name": e.name, "kind": e.kind, "description": e.description,
           "parameters": _jsonable(e.params)}
    obj = build(name)
    if isinstance(obj, FaceGraph):
        out["graph"] = obj.to_json()
    elif isinstance(obj, RealizedPolyhedron):
        out["polyhedron"] = polyhedron_to_json(obj)
    else:
        out["members"] = [polyhedron_to_json(rp, include_normals=False) for rp in obj]
    return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x == INF:
        return "inf"
    return x

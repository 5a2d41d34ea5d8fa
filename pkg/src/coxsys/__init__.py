"""Numerical checks of injectivity-radius bounds for hyperbolic Coxeter polyhedra."""
from .builder import (
    CoxeterSpec,
    RealizationError,
    RealizedPolyhedron,
    from_coxeter,
    ideal_polygon,
    realize,
    regular_polygon,
    regular_polyhedron,
    tetrahedron_spec,
    triangle_spec,
)
from .facegraph import FaceGraph, FaceGraphError
from .reports import VerificationReport
from .search import SystoleReport, bfs_systole, classify, pair_systole

__all__ = [
    "CoxeterSpec",
    "FaceGraph",
    "FaceGraphError",
    "RealizationError",
    "RealizedPolyhedron",
    "SystoleReport",
    "VerificationReport",
    "bfs_systole",
    "classify",
    "from_coxeter",
    "ideal_polygon",
    "pair_systole",
    "realize",
    "regular_polygon",
    "regular_polyhedron",
    "tetrahedron_spec",
    "triangle_spec",
]

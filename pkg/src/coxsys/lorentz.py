"""Minkowski linear algebra for the hyperboloid model.

Vectors are plain numpy arrays of length 3 or 4. The bilinear form has
signature (+, ..., +, -): the last coordinate is the timelike one, so in
R^{2,1}

    <x, y> = x1*y1 + x2*y2 - x3*y3.

Hyperplanes are described by unit spacelike normals e, with the hyperplane
{x : <x, e> = 0} and the closed half-space {x : <x, e> <= 0}.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

TOL_FORM = 1e-9
TOL_LIGHT = 1e-7


class LorentzError(ValueError):
    """Raised on malformed or degenerate Minkowski-space input."""


class CausalType(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class HyperplaneRelation:
    """How two hyperplanes sit relative to each other.

    ``kind`` is one of ``"intersecting"``, ``"parallel"``, ``"ultraparallel"``
    or ``"identical"``. ``value`` is the dihedral angle for intersecting
    planes, the distance for ultraparallel ones and ``None`` otherwise.
    """

    kind: str
    value: float | None = None


def form(dim: int) -> np.ndarray:
    """The Gram matrix J = diag(1, ..., 1, -1) of the Minkowski form."""
    J = np.eye(dim)
    J[-1, -1] = -1.0
    return J


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.shape[0] not in (3, 4):
        raise LorentzError(f"expected a vector of length 3 or 4, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise LorentzError("vector has non-finite components")
    return arr


def minkowski_inner(u, v) -> float:
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise LorentzError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return float(u[:-1] @ v[:-1] - u[-1] * v[-1])


def inner_matrix(A, B=None) -> np.ndarray:
    """Pairwise Minkowski products of the rows of A and B."""
    A = np.asarray(A, dtype=float)
    B = A if B is None else np.asarray(B, dtype=float)
    return A[:, :-1] @ B[:, :-1].T - np.outer(A[:, -1], B[:, -1])


def causal_type(v, tol: float = TOL_LIGHT) -> CausalType:
    v = as_vector(v)
    if not np.any(v):
        raise LorentzError("zero vector has no causal type")
    q = minkowski_inner(v, v)
    if q > tol:
        return CausalType.SPACELIKE
    if q < -tol:
        return CausalType.TIMELIKE
    return CausalType.LIGHTLIKE


def normalize(v) -> np.ndarray:
    """Scale v to unit Minkowski length; timelike results are future-pointing."""
    v = as_vector(v)
    q = minkowski_inner(v, v)
    scale = float(np.max(np.abs(v)))
    if scale == 0.0 or abs(q) <= TOL_LIGHT * scale * scale:
        raise LorentzError("cannot normalize a lightlike or zero vector")
    out = v / math.sqrt(abs(q))
    if q < 0 and out[-1] < 0:
        out = -out
    return out


def is_unit_spacelike(v, tol: float = TOL_FORM) -> bool:
    """<v, v> = 1 up to ``tol`` relative to the Euclidean size of v.

    Normals of planes far from the origin have large entries, and rounding
    in <v, v> grows with their square.
    """
    v = as_vector(v)
    return abs(minkowski_inner(v, v) - 1.0) <= tol * max(1.0, float(v @ v))


def reflection_matrix(a) -> np.ndarray:
    """Matrix of v -> v - 2<v, a> a for a unit spacelike normal a."""
    a = as_vector(a)
    if not is_unit_spacelike(a):
        raise LorentzError(f"reflection needs a unit spacelike normal, <a,a> = {minkowski_inner(a, a)!r}")
    J = form(a.shape[0])
    return np.eye(a.shape[0]) - 2.0 * np.outer(a, J @ a)


def hyperplane_relation(e, f, tol: float = TOL_LIGHT) -> HyperplaneRelation:
    e = as_vector(e)
    f = as_vector(f)
    if not (is_unit_spacelike(e) and is_unit_spacelike(f)):
        raise LorentzError("hyperplane normals must be unit spacelike")
    c = minkowski_inner(e, f)
    a = abs(c)
    if abs(a - 1.0) <= tol:
        # Planes with equal normals (up to sign) coincide; otherwise they are
        # tangent at infinity.
        if np.max(np.abs(e - math.copysign(1.0, c) * f)) <= math.sqrt(tol):
            return HyperplaneRelation("identical")
        return HyperplaneRelation("parallel")
    if a > 1.0:
        return HyperplaneRelation("ultraparallel", math.acosh(a))
    return HyperplaneRelation("intersecting", math.acos(-c))


def point_distance(x, y) -> float:
    x = as_vector(x)
    y = as_vector(y)
    for p in (x, y):
        if abs(minkowski_inner(p, p) + 1.0) > TOL_FORM * max(1.0, float(p @ p)) or p[-1] <= 0:
            raise LorentzError("points must be future unit timelike vectors")
    # 2 sinh(d/2) is the Minkowski length of x - y; stable for nearby points
    diff = x - y
    return 2.0 * math.asinh(0.5 * math.sqrt(max(0.0, minkowski_inner(diff, diff))))


def is_lorentz(M, tol: float = TOL_FORM) -> bool:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in (3, 4):
        return False
    J = form(M.shape[0])
    return bool(np.max(np.abs(M.T @ J @ M - J)) <= tol)


def hyperboloid_point(direction, distance: float) -> np.ndarray:
    """The point at hyperbolic ``distance`` from the origin in ``direction``."""
    u = np.asarray(direction, dtype=float)
    u = u / np.linalg.norm(u)
    return np.append(math.sinh(distance) * u, math.cosh(distance))


def transport_to_origin(p) -> np.ndarray:
    """A Lorentz matrix sending the future unit timelike vector p to (0, ..., 0, 1).

    This is the reflection in the bisector of p and the origin, so it is an
    involution; the identity is returned when p already is the origin.
    """
    p = as_vector(p)
    o = np.zeros_like(p)
    o[-1] = 1.0
    d = p - o
    q = minkowski_inner(d, d)
    if q <= 1e-24:
        return np.eye(p.shape[0])
    return reflection_matrix(d / math.sqrt(q))

"""Reflection-group elements, their classification, and systole search.

A word [w1, ..., wk] stands for the matrix R_w1 @ R_w2 @ ... @ R_wk, where
R_i is the reflection in generator i. Translation length is invariant under
conjugation and inversion, so reading words in the opposite order gives the
same lengths.

Translation length comes from the characteristic polynomial. An element M
of SO+(d,1) has palindromic characteristic polynomial; with y = x + 1/x its
roots pair up into y-values 2cosh(l) and 2cos(theta):

* d = 2: trace(M) = 1 + y, a single y;
* d = 3: y solves y^2 - t y + (s - 2) = 0, where t = trace(M) and
  s = (t^2 - trace(M^2)) / 2.

M is loxodromic when the largest y exceeds 2 and then l = acosh(y / 2).
Orientation-reversing elements are classified through their square.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .builder import RealizedPolyhedron, reduce_word
from .lorentz import (
    LorentzError,
    TOL_FORM,
    hyperplane_relation,
    inner_matrix,
    is_lorentz,
    minkowski_inner,
    reflection_matrix,
)

TOL_SPEC = 1e-7
TOL_IDENTITY = 1e-9
DEDUP_GRID = 1e-6
DEDUP_EXACT = 1e-8


@dataclass(frozen=True)
class IsoClass:
    """``kind`` is ``"identity"``, ``"loxodromic"`` or ``"non-loxodromic"``."""

    kind: str
    length: float | None = None

    @property
    def is_loxodromic(self) -> bool:
        return self.kind == "loxodromic"


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    word: tuple[int, ...]
    iso: IsoClass

    @property
    def translation_length(self) -> float | None:
        return self.iso.length


@dataclass
class SystoleReport:
    """Shortest loxodromic found in the orientation-preserving subgroup.

    ``full_group_min`` also admits odd words (glide reflections), which can be
    shorter than anything orientation-preserving.
    """

    min_translation_length: float
    witness: GroupElement
    search_depth: int
    elements_visited: int
    full_group_min: float | None = None
    full_group_witness: tuple[int, ...] | None = None

    @property
    def injrad(self) -> float:
        return self.min_translation_length / 2

    def to_json(self) -> dict:
        from .reports import round_sig

        return {
            "systole": round_sig(self.min_translation_length),
            "injrad": round_sig(self.injrad),
            "witness_word": list(self.witness.word),
            "depth": self.search_depth,
            "elements_visited": self.elements_visited,
            "full_group_min": round_sig(self.full_group_min),
        }


def generator_matrices(rp: RealizedPolyhedron) -> list[np.ndarray]:
    return [reflection_matrix(n) for n in rp.generators]


def word_to_matrix(rp: RealizedPolyhedron, word: Sequence[int]) -> np.ndarray:
    gens = generator_matrices(rp)
    D = rp.dim + 1
    M = np.eye(D)
    for letter in word:
        if not (0 <= int(letter) < len(gens)):
            raise IndexError(f"generator index {letter} out of range 0..{len(gens) - 1}")
        M = M @ gens[int(letter)]
    return M


def _half_trace_excess(M: np.ndarray) -> tuple[float, float]:
    """(y/2 - 1, y/2) for the largest y-value of an orientation-preserving M."""
    D = M.shape[0]
    t = float(np.trace(M))
    if D == 3:
        y = t - 1.0
    else:
        t2 = float(np.einsum("ij,ji->", M, M))
        s = (t * t - t2) / 2.0
        disc = max(0.0, t * t - 4.0 * (s - 2.0))
        y = (t + math.sqrt(disc)) / 2.0
    return y / 2.0 - 1.0, y / 2.0


def classify(M, check: bool = True) -> IsoClass:
    M = np.asarray(M, dtype=float)
    size = max(1.0, float(np.max(np.abs(M))))
    if check and not is_lorentz(M, tol=max(TOL_FORM, 1e-13 * size * size)):
        raise LorentzError("classify needs a Lorentz matrix")
    D = M.shape[0]
    if np.max(np.abs(M - np.eye(D))) <= TOL_IDENTITY * size * size:
        return IsoClass("identity")
    halve = np.linalg.det(M) < 0
    A = M @ M if halve else M
    if halve and np.max(np.abs(A - np.eye(D))) <= TOL_IDENTITY * size * size:
        return IsoClass("non-loxodromic")  # a reflection
    excess, c = _half_trace_excess(A)
    if excess <= _gray_zone(size, halve):
        return IsoClass("non-loxodromic")
    length = math.log(c + math.sqrt(c * c - 1.0))
    return IsoClass("loxodromic", length / 2 if halve else length)


def _gray_zone(size, squared: bool):
    # Rounding noise in cosh(l) - 1 grows with the entries of the input
    # matrix, quadratically once the matrix has been squared.
    return TOL_SPEC * (size * size if squared else size)


def element(rp: RealizedPolyhedron, word: Sequence[int]) -> GroupElement:
    w = reduce_word(word)
    M = word_to_matrix(rp, w)
    return GroupElement(M, w, classify(M))


def pair_systole(rp: RealizedPolyhedron) -> SystoleReport | None:
    """Shortest product of reflections in two disjoint faces; None if no such pair.

    The translation length of the product is twice the distance between the
    two hyperplanes.
    """
    best = None
    for i, j in combinations(range(rp.n_faces), 2):
        rel = hyperplane_relation(rp.normals[i], rp.normals[j])
        if rel.kind != "ultraparallel":
            continue
        length = 2 * rel.value
        if best is None or length < best[0] - 1e-12:
            best = (length, i, j)
    if best is None:
        return None
    length, i, j = best
    word = reduce_word(rp.reflection_word(i) + rp.reflection_word(j))
    M = word_to_matrix(rp, word)
    el = GroupElement(M, word, IsoClass("loxodromic", length))
    return SystoleReport(length, el, search_depth=len(word), elements_visited=rp.n_faces * (rp.n_faces - 1) // 2)


def _lengths_batch(Ms: np.ndarray, squared: bool = False) -> np.ndarray:
    """Translation lengths of a stack of matrices (NaN if not loxodromic).

    With ``squared`` the matrices are squared first (orientation-reversing
    input) and the lengths halved.
    """
    D = Ms.shape[1]
    size = np.maximum(1.0, np.max(np.abs(Ms), axis=(1, 2)))
    A = np.einsum("kij,kjl->kil", Ms, Ms) if squared else Ms
    t = np.trace(A, axis1=1, axis2=2)
    if D == 3:
        y = t - 1.0
    else:
        t2 = np.einsum("kij,kji->k", A, A)
        s = (t * t - t2) / 2.0
        disc = np.maximum(0.0, t * t - 4.0 * (s - 2.0))
        y = (t + np.sqrt(disc)) / 2.0
    c = y / 2.0
    near_id = np.max(np.abs(A - np.eye(D)), axis=(1, 2)) <= TOL_IDENTITY * size * size
    lox = ((c - 1.0) > _gray_zone(size, squared)) & ~near_id
    out = np.full(len(Ms), np.nan)
    cl = c[lox]
    out[lox] = np.log(cl + np.sqrt(cl * cl - 1.0))
    return out / 2.0 if squared else out


def bfs_systole(rp: RealizedPolyhedron, max_len: int) -> SystoleReport | None:
    """Breadth-first search over reduced words up to ``max_len``.

    Each level is expanded in lexicographic order of words, and a matrix
    already seen (entries matched on a 1e-6 grid, then confirmed to 1e-8)
    is dropped, so every element is represented by its shortest,
    lexicographically first word. The result is deterministic.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    gens = np.array(generator_matrices(rp))
    k, D = len(gens), gens.shape[1]
    seen: dict[bytes, list[np.ndarray]] = {}

    def key(M):
        return np.round(M / DEDUP_GRID).astype(np.int64).tobytes()

    def fresh(M) -> bool:
        kk = key(M)
        bucket = seen.setdefault(kk, [])
        for other in bucket:
            if np.max(np.abs(other - M)) <= DEDUP_EXACT * max(1.0, float(np.max(np.abs(M)))):
                return False
        bucket.append(M)
        return True

    fresh(np.eye(D))
    frontier_words: list[tuple[int, ...]] = [()]
    frontier = np.eye(D)[None]
    visited = 1
    best_even = None  # (length, word, matrix)
    best_any = None
    for level in range(1, max_len + 1):
        cand = np.einsum("pij,gjk->pgik", frontier, gens).reshape(-1, D, D)
        words = []
        keep = []
        for idx in range(len(cand)):
            p, g = divmod(idx, k)
            w = frontier_words[p]
            if w and w[-1] == g:
                continue
            if fresh(cand[idx]):
                keep.append(idx)
                words.append(w + (g,))
        if not keep:
            break
        frontier = cand[keep]
        frontier_words = words
        visited += len(keep)
        lengths = _lengths_batch(frontier, squared=level % 2 == 1)
        for i in np.argsort(lengths, kind="stable"):
            L = lengths[i]
            if np.isnan(L):
                break
            if best_any is None or L < best_any[0] - 1e-9:
                best_any = (float(L), words[i], frontier[i])
            if level % 2 == 0 and (best_even is None or L < best_even[0] - 1e-9):
                best_even = (float(L), words[i], frontier[i])
            break
    if best_even is None:
        return None
    L, w, M = best_even
    el = GroupElement(M.copy(), w, IsoClass("loxodromic", L))
    return SystoleReport(L, el, search_depth=max_len, elements_visited=visited,
                         full_group_min=best_any[0] if best_any else None,
                         full_group_witness=best_any[1] if best_any else None)


def displacement_length(M, k1: int = 8, k2: int = 16, seed: int = 0) -> float:
    """Translation length estimated from d(p, M^k p) growth at a random point p.

    d(p, M^k p) = k * l + (bounded term converging exponentially fast), so
    the slope between k1 and k2 removes the bounded term. Both powers are
    scaled up together when the first estimate shows slow convergence.
    """
    M = np.asarray(M, dtype=float)
    if np.linalg.det(M) < 0:
        M = M @ M
        scale = 0.5
    else:
        scale = 1.0
    rng = np.random.default_rng(seed)
    D = M.shape[0]
    direction = rng.normal(size=D - 1)
    r = rng.uniform(0.1, 1.0)
    p = np.append(math.sinh(r) * direction / np.linalg.norm(direction), math.cosh(r))

    def dist_k(k):
        # M^k p is not renormalized: its Minkowski norm cancels catastrophically
        q = np.linalg.matrix_power(M, k) @ p
        return math.acosh(max(1.0, -minkowski_inner(p, q)))

    # the bounded term decays like exp(-k l); stretch k until k1 * l is large
    rough = (dist_k(k2) - dist_k(k1)) / (k2 - k1)
    if rough > 0:
        m = min(256, max(1, math.ceil(24.0 / (k1 * rough))))
        k1, k2 = m * k1, m * k2
    return scale * (dist_k(k2) - dist_k(k1)) / (k2 - k1)


def translation_length_lower_bound_check(rp: RealizedPolyhedron, report: SystoleReport,
                                         rel_tol: float = 1e-4, seed: int = 0) -> bool:
    """Cross-check a witness's length against its displacement growth.

    False for witnesses that are not loxodromic or whose estimate disagrees.
    """
    M = word_to_matrix(rp, report.witness.word)
    iso = classify(M)
    if not iso.is_loxodromic:
        return False
    est = displacement_length(M, seed=seed)
    if not math.isfinite(est) or est <= 0:
        return False
    return abs(est - report.min_translation_length) <= rel_tol * report.min_translation_length


def _random_rotation(rng, D) -> np.ndarray:
    """Random rotation of the spatial coordinates, fixing the time axis."""
    q, r = np.linalg.qr(rng.normal(size=(D - 1, D - 1)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    M = np.eye(D)
    M[:-1, :-1] = q
    return M


def _random_boost(rng, D, max_rapidity: float) -> np.ndarray:
    """Random Lorentz map: rotation, boost along x_1 of bounded rapidity, rotation."""
    t = rng.uniform(0.0, max_rapidity)
    B = np.eye(D)
    B[0, 0] = B[-1, -1] = math.cosh(t)
    B[0, -1] = B[-1, 0] = math.sinh(t)
    return _random_rotation(rng, D) @ B @ _random_rotation(rng, D)


def random_ultraparallel_pair(rng: np.random.Generator, dim: int = 3, d_range=(0.05, 4.0),
                              max_rapidity: float = 1.5):
    """A random pair of unit normals to disjoint hyperplanes, and their distance.

    The canonical pair e = x_1, f = -cosh(d) x_1 + sinh(d) x_time is moved by a
    random Lorentz map whose boost part is bounded, so both planes stay within
    bounded distance of the origin and the normals stay well conditioned.
    """
    D = dim
    d = rng.uniform(*d_range)
    e = np.zeros(D)
    e[0] = 1.0
    f = np.zeros(D)
    f[0], f[-1] = -math.cosh(d), math.sinh(d)
    # recentre so the common perpendicular is symmetric about the origin
    B = _random_boost(rng, D, max_rapidity)
    half = np.eye(D)
    half[0, 0] = half[-1, -1] = math.cosh(d / 2)
    half[0, -1] = half[-1, 0] = math.sinh(d / 2)
    return B @ half @ e, B @ half @ f, d


def _random_unit_spacelike(rng, D, max_rapidity: float = 1.5):
    """Normal of a random hyperplane whose distance to the origin is at most ``max_rapidity``."""
    e = np.zeros(D)
    e[0] = 1.0
    return _random_boost(rng, D, max_rapidity) @ e


def random_isometry(rng, dim: int = 3, n: int = 4) -> np.ndarray:
    M = np.eye(dim)
    for _ in range(n):
        M = M @ reflection_matrix(_random_unit_spacelike(rng, dim))
    return M


__all__ = [
    "IsoClass",
    "GroupElement",
    "SystoleReport",
    "word_to_matrix",
    "classify",
    "element",
    "pair_systole",
    "bfs_systole",
    "displacement_length",
    "translation_length_lower_bound_check",
    "random_ultraparallel_pair",
    "inner_matrix",
]

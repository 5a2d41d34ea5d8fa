"""Minkowski-space primitives."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coxsys.lorentz import (
    CausalType,
    LorentzError,
    causal_type,
    hyperplane_relation,
    hyperboloid_point,
    is_lorentz,
    is_unit_spacelike,
    minkowski_inner,
    normalize,
    point_distance,
    reflection_matrix,
    transport_to_origin,
)
from coxsys.search import random_ultraparallel_pair, _random_unit_spacelike


def test_inner_basics():
    assert minkowski_inner((1, 0, 0), (0, 0, 1)) == 0
    assert minkowski_inner((0, 0, 1), (0, 0, 1)) == -1
    assert minkowski_inner((1, 1, 1), (1, 1, -1)) == 3
    assert minkowski_inner((1, 2, 3, 4), (1, 1, 1, 1)) == 1 + 2 + 3 - 4


def test_inner_dimension_mismatch():
    with pytest.raises(LorentzError):
        minkowski_inner((1, 0, 0), (1, 0, 0, 0))
    with pytest.raises(LorentzError):
        minkowski_inner((1, 0), (1, 0))
    with pytest.raises(LorentzError):
        minkowski_inner((1, np.nan, 0), (1, 0, 0))


def test_causal_type():
    assert causal_type((1, 0, 0)) is CausalType.SPACELIKE
    assert causal_type((0, 0, 1)) is CausalType.TIMELIKE
    assert causal_type((1, 0, 1)) is CausalType.LIGHTLIKE
    with pytest.raises(LorentzError):
        causal_type((0, 0, 0))


def test_normalize():
    np.testing.assert_allclose(normalize((2, 0, 0)), (1, 0, 0))
    np.testing.assert_allclose(normalize((0, 0, -3)), (0, 0, 1))
    v = normalize((3, 0, -4))
    assert minkowski_inner(v, v) == pytest.approx(-1, abs=1e-12)
    assert v[-1] > 0
    with pytest.raises(LorentzError):
        normalize((1, 0, 1))


def test_reflection_examples():
    M = reflection_matrix((1, 0, 0))
    np.testing.assert_allclose(M @ (1, 0, 0), (-1, 0, 0))
    np.testing.assert_allclose(M @ (0, 0, 1), (0, 0, 1))
    with pytest.raises(LorentzError):
        reflection_matrix((0, 0, 1))
    with pytest.raises(LorentzError):
        reflection_matrix((2, 0, 0))


def test_reflection_random_samples(rng):
    """1000 random unit spacelike normals: involution, det -1, form-preserving."""
    for _ in range(1000):
        D = int(rng.integers(3, 5))
        a = _random_unit_spacelike(rng, D)
        M = reflection_matrix(a)
        assert np.max(np.abs(M @ M - np.eye(D))) <= 1e-12 * max(1.0, float(a @ a))
        assert np.linalg.det(M) == pytest.approx(-1, abs=1e-9 * max(1.0, float(a @ a)))
        assert is_lorentz(M, tol=1e-9 * max(1.0, float(a @ a)))


def test_hyperplane_relation_examples():
    e = np.array([1.0, 0, 0])
    c = 7.0
    f = np.array([-c, 0, math.sqrt(c * c - 1)])
    rel = hyperplane_relation(e, f)
    assert rel.kind == "ultraparallel"
    assert rel.value == pytest.approx(2.6339157938, abs=1e-9)
    assert hyperplane_relation(e, e).kind == "identical"
    t = math.pi / 5
    g = np.array([-math.cos(t), math.sin(t), 0])
    rel = hyperplane_relation(e, g)
    assert rel.kind == "intersecting" and rel.value == pytest.approx(t, abs=1e-12)
    # ideal square: consecutive sides are tangent at infinity
    assert hyperplane_relation(np.array([1.0, 1, 1]), np.array([-1.0, 1, 1])).kind == "parallel"
    with pytest.raises(LorentzError):
        hyperplane_relation((2, 0, 0), e)


def test_hyperplane_relation_symmetric(rng):
    for _ in range(200):
        e, f, _ = random_ultraparallel_pair(rng, dim=int(rng.integers(3, 5)))
        a, b = hyperplane_relation(e, f), hyperplane_relation(f, e)
        assert a.kind == b.kind
        assert a.value == pytest.approx(b.value, abs=1e-12)


def test_ultraparallel_distance_matches_sampled_infimum(rng):
    """acosh(-<e,f>) against a direct minimization of the distance from H_e to H_f."""
    from scipy.optimize import minimize

    for _ in range(20):
        e, f, d = random_ultraparallel_pair(rng, dim=3, d_range=(0.1, 2.0))
        # points of H_e: unit timelike p with <p, e> = 0
        basis = np.linalg.svd(np.array([e * np.array([1, 1, -1])]))[2][1:]

        def point(s):
            v = s[0] * basis[0] + s[1] * basis[1]
            q = -minkowski_inner(v, v)
            if q <= 1e-12:
                return None
            p = v / math.sqrt(q)
            return p if p[-1] > 0 else -p

        def dist_to_f(s):
            p = point(s)
            return 1e6 if p is None else math.asinh(abs(minkowski_inner(p, f)))

        samples = rng.normal(size=(400, 2))
        start = min(samples, key=dist_to_f)
        res = minimize(dist_to_f, start, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-14})
        assert res.fun == pytest.approx(math.acosh(-minkowski_inner(e, f)), abs=1e-6)
        assert d == pytest.approx(math.acosh(-minkowski_inner(e, f)), abs=1e-9)


def test_point_distance():
    o = np.array([0.0, 0, 1])
    assert point_distance(o, o) == 0
    assert point_distance(o, (math.sinh(1), 0, math.cosh(1))) == pytest.approx(1, abs=1e-12)
    with pytest.raises(LorentzError):
        point_distance(o, (1, 0, 0))
    with pytest.raises(LorentzError):
        point_distance(o, (0, 0, -1))


@given(st.lists(st.floats(-3, 3), min_size=9, max_size=9))
def test_triangle_inequality(xs):
    pts = [hyperboloid_point((xs[3 * k] + 1e-3, xs[3 * k + 1], 0.0), abs(xs[3 * k + 2])) for k in range(3)]
    a, b, c = pts
    assert point_distance(a, c) <= point_distance(a, b) + point_distance(b, c) + 1e-9


@given(st.lists(st.floats(-5, 5), min_size=9, max_size=9))
def test_inner_symmetric_bilinear(xs):
    u, v, w = np.array(xs[:3]), np.array(xs[3:6]), np.array(xs[6:])
    assert minkowski_inner(u, v) == minkowski_inner(v, u)
    lhs = minkowski_inner(2.5 * u + w, v)
    rhs = 2.5 * minkowski_inner(u, v) + minkowski_inner(w, v)
    assert lhs == pytest.approx(rhs, abs=1e-12 * (1 + np.abs(u).sum() + np.abs(w).sum()) * (1 + np.abs(v).sum()))


def test_is_lorentz():
    assert is_lorentz(np.eye(3))
    assert not is_lorentz(np.diag([2.0, 1, 1]))
    assert not is_lorentz(np.eye(2))


def test_transport_to_origin():
    p = hyperboloid_point((1, 2, 0.5), 1.3)
    M = transport_to_origin(p)
    np.testing.assert_allclose(M @ p, (0, 0, 0, 1), atol=1e-12)
    assert is_lorentz(M)
    np.testing.assert_allclose(transport_to_origin(np.array([0.0, 0, 1])), np.eye(3))


def test_unit_spacelike_is_scale_relative():
    h = 1e-4
    n = np.array([1.0, 0.0, math.cos(h)]) / math.sin(h)
    assert is_unit_spacelike(n)
    assert not is_unit_spacelike(np.array([1.0 + 1e-6, 0, 0]))

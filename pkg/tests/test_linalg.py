import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import e, scales, sparse_vectors
from horoboundary import (
    ConeClass,
    ConeVector,
    DiscPoint,
    DomainError,
    InputError,
    SparseVector,
    bilinear_form,
    classify_cone,
    inner,
    normalize_hyperboloid,
    quadratic_form,
)


def test_inner_examples():
    assert inner(e(1, 0.5), e(2, 0.5)) == 0.0
    assert inner(e(1, 0.3), e(1)) == 0.3
    x = SparseVector({1: 0.6, 2: 0.8})
    assert inner(x, x) == pytest.approx(1.0, abs=1e-15)


def test_canonical_zero_pruning():
    assert SparseVector({1: 0.0, 2: 0.5}) == e(2, 0.5)
    assert SparseVector({3: 0.25}) - SparseVector({3: 0.25}) == SparseVector()
    assert SparseVector([(2, 1.0), (2, -1.0)]).support == ()
    assert SparseVector({5: 1.0, 1: 2.0}).support == (1, 5)


def test_sparse_rejects_bad_entries():
    with pytest.raises(InputError):
        SparseVector({-1: 1.0})
    with pytest.raises(InputError):
        SparseVector({1: float("nan")})


def test_quadratic_form_examples():
    assert quadratic_form(ConeVector(1.0)) == 1.0
    assert quadratic_form(ConeVector(1.0, e(1, 0.5))) == 0.75
    assert quadratic_form(ConeVector(1.0, e(1))) == 0.0


def test_bilinear_form_examples():
    assert bilinear_form(ConeVector(1), ConeVector(1, e(1, 0.5))) == 1.0
    assert bilinear_form(ConeVector(1, e(1, 0.5)), ConeVector(1, e(2, 0.5))) == 1.0
    u, v = ConeVector(2, e(1)), ConeVector(1, e(1, 0.5))
    assert bilinear_form(u, v) == 1.5
    assert bilinear_form(u, v) == u.lam * v.lam - inner(u.spatial, v.spatial)


@pytest.mark.parametrize(
    "x, expected",
    [(0.5, ConeClass.INTERIOR), (1.0, ConeClass.BOUNDARY), (1.5, ConeClass.EXTERIOR)],
)
def test_classify_examples(x, expected):
    assert classify_cone(ConeVector(1, e(1, x)), 1e-12) is expected


def test_classify_negative_lambda_is_exterior():
    assert classify_cone(ConeVector(-1.0, e(1, 0.5))) is ConeClass.EXTERIOR


def test_classify_requires_positive_tol():
    with pytest.raises(InputError):
        classify_cone(ConeVector(1), 0.0)


def test_normalize_examples():
    assert normalize_hyperboloid(ConeVector(1)) == ConeVector(1)
    assert normalize_hyperboloid(ConeVector(2)) == ConeVector(1)
    h = normalize_hyperboloid(ConeVector(1, e(1, 0.5)))
    assert h.lam == pytest.approx(1 / math.sqrt(0.75), abs=1e-15)
    assert h.spatial.get(1) == pytest.approx(0.5 / math.sqrt(0.75), abs=1e-15)
    assert quadratic_form(h) == pytest.approx(1.0, abs=1e-12)


def test_normalize_rejects_boundary_and_exterior():
    with pytest.raises(DomainError):
        normalize_hyperboloid(ConeVector(1, e(1)))
    with pytest.raises(DomainError):
        normalize_hyperboloid(ConeVector(1, e(1, 2.0)))


def test_disc_point_must_be_strictly_inside():
    DiscPoint(e(3, 0.99))
    with pytest.raises(DomainError):
        DiscPoint(e(3, 1.0))
    assert DiscPoint.from_cone(ConeVector(4.0, e(1, 2.0))) == DiscPoint(e(1, 0.5))


@given(sparse_vectors(), sparse_vectors())
def test_inner_symmetric(x, y):
    assert inner(x, y) == inner(y, x)


@given(sparse_vectors(), sparse_vectors(), sparse_vectors(), st.floats(-3, 3), st.floats(-3, 3))
def test_inner_bilinear(x, y, z, a, b):
    lhs = inner(x * a + y * b, z)
    rhs = a * inner(x, z) + b * inner(y, z)
    scale = (abs(a) * x.norm() + abs(b) * y.norm()) * z.norm()
    assert abs(lhs - rhs) <= 1e-14 * max(scale, 1e-300) * 8


@given(st.floats(-3, 3), sparse_vectors())
def test_q_equals_b_diagonal(lam, x):
    u = ConeVector(lam, x)
    assert quadratic_form(u) == pytest.approx(bilinear_form(u, u), rel=1e-12, abs=1e-14)


@given(st.floats(0.01, 3), sparse_vectors(), scales)
def test_classification_is_ray_invariant(lam, x, s):
    u = ConeVector(lam, x)
    c = classify_cone(u)
    if c is not ConeClass.BOUNDARY:
        # boundary band is relative to max(1, lam) so only clear-cut cases are invariant
        n = x.norm()
        if abs(n - lam) > 1e-9 * max(1.0, lam):
            assert classify_cone(u.scaled(s)) is c


@given(sparse_vectors(max_norm=0.99), scales)
def test_normalize_idempotent(x, s):
    u = ConeVector(s, x * s)
    h = normalize_hyperboloid(u)
    h2 = normalize_hyperboloid(h)
    assert abs(h2.lam - h.lam) <= 1e-12 * h.lam
    assert abs(quadratic_form(h) - 1.0) <= 1e-12


@given(st.floats(-1e6, 1e6), sparse_vectors())
def test_json_round_trip_is_exact(lam, x):
    u = ConeVector(lam, x)
    assert ConeVector.from_json(json.loads(json.dumps(u.to_json()))) == u
    assert SparseVector.from_json(json.loads(json.dumps(x.to_json()))) == x


def test_from_json_field_context():
    with pytest.raises(InputError, match="'spatial'"):
        ConeVector.from_json({"lambda": 1.0, "spatial": {"a": 1}})
    with pytest.raises(InputError, match="lambda"):
        ConeVector.from_json({"spatial": {}})

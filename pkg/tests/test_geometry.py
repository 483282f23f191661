import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smalltri.geometry import (SIDE, BaryPoint, Strip, T, bary_to_cart, bary_to_cart_array, cart_to_bary,
                               diameter, distance, project_to_triangle, shoelace_area, strip_width,
                               triple_area, triple_areas, uniform_bary, validate_bary)


@st.composite
def bary(draw):
    a = draw(st.floats(0, 1))
    b = draw(st.floats(0, 1))
    if a + b > 1:
        a, b = 1 - a, 1 - b
    return (a, b, 1 - a - b)


def test_reference_triangle_has_unit_area():
    assert shoelace_area(T.v0, T.v1, T.v2) == pytest.approx(1.0, abs=1e-15)
    assert distance((1, 0, 0), (0, 1, 0)) == pytest.approx(SIDE, abs=1e-15)
    assert T.centroid.x == pytest.approx(0.0, abs=1e-15)


def test_vertices_map_to_corners():
    for e, v in zip(np.eye(3), (T.v0, T.v1, T.v2)):
        assert bary_to_cart(e) == pytest.approx(v)


@pytest.mark.parametrize("p", [(1.2, -0.2, 0.0), (0.5, 0.5, 0.5), (math.nan, 0.5, 0.5), (1, 0)])
def test_validate_rejects(p):
    with pytest.raises(ValueError):
        validate_bary(p)


def test_checked_constructor():
    assert BaryPoint.checked(0.5, 0.25, 0.25).l1 == 0.5
    with pytest.raises(ValueError):
        BaryPoint.checked(0.9, 0.2, 0.0)


@settings(max_examples=200, deadline=None)
@given(bary())
def test_round_trip(p):
    q = cart_to_bary(bary_to_cart(p))
    assert np.allclose(q, p, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(bary(), bary(), bary())
def test_det_matches_shoelace(p, q, r):
    a = triple_area(p, q, r)
    b = shoelace_area(bary_to_cart(p), bary_to_cart(q), bary_to_cart(r))
    assert a == pytest.approx(b, abs=1e-12)
    assert 0 <= a <= 1 + 1e-12


@settings(max_examples=100, deadline=None)
@given(bary(), bary(), bary())
def test_area_symmetric(p, q, r):
    vals = [triple_area(*perm) for perm in ((p, q, r), (q, r, p), (r, q, p), (p, r, q))]
    assert max(vals) - min(vals) <= 1e-15


def test_exact_areas():
    F = Fraction
    assert triple_area((1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1
    assert triple_area((F(1, 2), F(1, 2), 0), (F(1, 2), 0, F(1, 2)), (0, F(1, 2), F(1, 2))) == F(1, 4)
    # collinear: three points on one side
    assert triple_area((1, 0, 0), (F(1, 3), F(2, 3), 0), (0, 1, 0)) == 0


def test_vectorised_areas_agree():
    rng = np.random.default_rng(1)
    pts = uniform_bary(rng, (50, 5))
    idx = np.array([[0, 1, 2], [1, 3, 4], [0, 2, 4]])
    got = triple_areas(pts, idx)
    want = np.array([[triple_area(*p[list(t)]) for t in idx] for p in pts])
    assert np.allclose(got, want, atol=1e-15)


def test_strip_width():
    assert strip_width(0.4 * SIDE, 0.24) == pytest.approx(3 * math.sqrt(3) / 5 * SIDE, abs=1e-12)
    with pytest.raises(ValueError):
        strip_width(0.0, 0.24)


def test_strip_is_the_small_area_locus():
    rng = np.random.default_rng(2)
    p, q = uniform_bary(rng, 2)
    s = Strip.for_area(bary_to_cart(p), bary_to_cart(q), 0.1)
    for x in uniform_bary(rng, 500):
        small = triple_area(p, q, x) <= 0.1
        assert s.contains(bary_to_cart(x)) == small or abs(triple_area(p, q, x) - 0.1) < 1e-9
    edge = s.boundary_point(0.3)
    assert abs(s.signed_offset(edge)) == pytest.approx(s.half_width)


def test_diameter_and_distance():
    assert diameter(T.vertices) == pytest.approx(SIDE)
    assert distance((1, 0, 0), (1, 0, 0)) == 0
    with pytest.raises(ValueError):
        diameter([])


def test_projection_idempotent():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(100, 3))
    x += (1 - x.sum(axis=1, keepdims=True)) / 3  # weights summing to 1, possibly negative
    p = project_to_triangle(x)
    assert np.allclose(p.sum(axis=1), 1)
    assert (p >= 0).all()
    assert np.allclose(project_to_triangle(p), p)


def test_uniform_sampling_is_uniform():
    rng = np.random.default_rng(4)
    p = uniform_bary(rng, 200_000)
    # the inner triangle of midpoints holds a quarter of the mass; each corner too
    assert (p.max(axis=1) <= 0.5).mean() == pytest.approx(0.25, abs=5e-3)
    assert (p[:, 0] >= 0.5).mean() == pytest.approx(0.25, abs=5e-3)
    assert np.allclose(bary_to_cart_array(p).mean(axis=0), T.centroid, atol=5e-3)

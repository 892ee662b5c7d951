import math
from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from polytrop.errors import BadDimension, DimensionMismatch, EmptyPolytope, Unbounded
from polytrop.geometry import (
    AffineMap,
    Halfspace,
    Hyperplane,
    Polytope,
    all_faces,
    apply_affine,
    faces,
    intersect,
    is_face_of,
    is_gamma_rational,
    normalized_volume,
    polytope_from_halfspaces,
    polytope_from_vertices,
    rational_relint_point,
    relint_contains,
)
from polytrop.rational import ValueGroup

from conftest import seg

coord = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def points(n, lo=1, hi=8):
    return st.lists(st.tuples(*[coord] * n), min_size=lo, max_size=hi)


def hull2d(pts):
    """Andrew's monotone chain; independent vertex oracle in the plane."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace(poly):
    s = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(poly, poly[1:] + poly[:1]))
    return abs(s) / 2


def square():
    return polytope_from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])


def triangle():
    return polytope_from_vertices([(0, 0), (1, 0), (0, 1)])


# -- examples -----------------------------------------------------------------


def test_hull_examples():
    T = triangle()
    assert T.dim == 2 and len(T.vertices) == 3
    S = polytope_from_vertices([(0, 0), (1, 1), (F(1, 2), F(1, 2))])
    assert S.dim == 1 and S.vertices == ((0, 0), (1, 1))
    L = polytope_from_vertices([(0,), (1,), (F(1, 3),)])
    assert L.vertices == ((0,), (1,))


def test_hull_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatch):
        polytope_from_vertices([(0, 0), (1,)])


def test_halfspace_examples():
    T = polytope_from_halfspaces([Halfspace((1, 0), 0), Halfspace((0, 1), 0), Halfspace((-1, -1), -1)])
    assert T == triangle()
    with pytest.raises(Unbounded):
        polytope_from_halfspaces([Halfspace((1,), 0)])
    with pytest.raises(EmptyPolytope):
        polytope_from_halfspaces([Halfspace((1,), 1), Halfspace((-1,), 0)])


def test_halfspaces_are_canonical():
    h = Halfspace((2, 4), 3)
    assert h.normal == (1, 2) and h.constant == F(3, 2)
    e = Hyperplane((-3, 0), 6)
    assert e.normal == (1, 0) and e.constant == -2


def test_faces_examples():
    assert len(faces(square(), 0)) == 4
    assert len(faces(square(), 1)) == 4
    assert len(faces(triangle(), 1)) == 3
    assert faces(triangle(), 2) == [triangle()]
    with pytest.raises(BadDimension):
        faces(triangle(), 3)


def test_relint_examples():
    assert relint_contains(seg(0, 1), (F(1, 2),))
    assert not relint_contains(seg(0, 1), (F(0),))
    flat = polytope_from_vertices([(0, 0), (1, 0)])
    assert relint_contains(flat, (F(1, 2), F(0)))
    assert not relint_contains(flat, (F(1, 2), F(1, 7)))


def test_relint_point_examples():
    assert rational_relint_point(triangle()) == (F(1, 3), F(1, 3))
    assert rational_relint_point(seg(0, 1)) == (F(1, 2),)
    assert rational_relint_point(polytope_from_vertices([(F(2, 7),)])) == (F(2, 7),)


def test_intersect_examples():
    assert intersect(seg(0, 1), seg(1, 2)).vertices == ((1,),)
    assert intersect(seg(0, 1), seg(2, 3)) is None
    clip = intersect(square(), polytope_from_vertices([(F(-1, 2), F(1, 4)), (F(3, 2), F(3, 4))]))
    # the line y = x/4 + 3/8 meets x = 0 and x = 1
    assert clip.vertices == ((0, F(3, 8)), (1, F(5, 8)))


def test_affine_examples():
    assert apply_affine(AffineMap.identity(2), triangle()) == triangle()
    proj = apply_affine(AffineMap([[1, 0]], [0]), square())
    assert proj == seg(0, 1) and proj.dim == 1
    diag = polytope_from_vertices([(0, 0), (1, 1)])
    pt = apply_affine(AffineMap([[-1, 1]], [0]), diag)
    assert pt.vertices == ((0,),)


def test_volume_examples():
    assert normalized_volume(polytope_from_vertices([(0, 0), (2, 2)])) == 2
    assert normalized_volume(square()) == 1
    assert normalized_volume(polytope_from_vertices([(5, 7)])) == 1
    assert normalized_volume(triangle()) == F(1, 2)
    # a triangle in the plane z = 1 inside R^3
    T3 = polytope_from_vertices([(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    assert T3.dim == 2 and normalized_volume(T3) == F(1, 2)


def test_gamma_rational_examples():
    half = ValueGroup.discrete(F(1, 2))
    assert is_gamma_rational(seg(0, F(3, 2)), half)
    assert not is_gamma_rational(seg(0, F(1, 3)), half)
    assert is_gamma_rational(seg(0, F(1, 3)), ValueGroup.rationals())


def test_json_round_trip():
    T = triangle()
    assert Polytope.from_json(T.to_json()) == T
    assert T.to_json() == {"ambient_dim": 2, "vertices": [["0", "0"], ["0", "1"], ["1", "0"]]}


# -- properties ---------------------------------------------------------------


@given(points(2, 1, 9))
def test_planar_hull_matches_monotone_chain(pts):
    P = polytope_from_vertices(pts)
    assert set(P.vertices) == set(hull2d([tuple(F(x) for x in p) for p in pts]))
    if P.dim == 2:
        assert P.volume == shoelace(hull2d(list(P.vertices)))


@given(points(3, 1, 8))
def test_vertex_halfspace_round_trip(pts):
    P = polytope_from_vertices(pts)
    Q = polytope_from_halfspaces(P.facets, P.equations, P.ambient_dim)
    assert Q.vertices == P.vertices
    for p in pts:
        assert P.contains(p)
    assert P.dim == sympy.Matrix([[a - b for a, b in zip(v, P.vertices[0])] for v in P.vertices]).rank()


@given(points(3, 1, 8))
def test_euler_relation(pts):
    P = polytope_from_vertices(pts)
    counts = [len(faces(P, k)) for k in range(P.dim + 1)]
    assert sum((-1) ** k * c for k, c in enumerate(counts)) == 1


@given(points(2, 1, 6))
def test_faces_meet_in_faces(pts):
    P = polytope_from_vertices(pts)
    fs = all_faces(P)
    for A, B in combinations(fs, 2):
        X = intersect(A, B)
        if X is not None:
            assert is_face_of(X, A) and is_face_of(X, B)


@given(points(3, 1, 8))
def test_relint_point_is_interior(pts):
    P = polytope_from_vertices(pts)
    assert relint_contains(P, rational_relint_point(P))


mat = st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2)


@given(points(2, 1, 6), mat, mat, st.tuples(coord, coord))
def test_affine_images_compose(pts, A, B, t):
    P = polytope_from_vertices(pts)
    m1, m2 = AffineMap(A, t), AffineMap(B, (0, 1))
    assert apply_affine(m2, apply_affine(m1, P)) == apply_affine(m2.compose(m1), P)
    assert apply_affine(m1, P).dim <= P.dim


@given(points(2, 3, 8), st.fractions(min_value=-2, max_value=2, max_denominator=3), st.integers(-2, 2), st.integers(-2, 2))
def test_volume_is_additive_under_a_cut(pts, c, a, b):
    assume(a or b)
    P = polytope_from_vertices(pts)
    assume(P.dim == 2)
    h = Halfspace((a, b), c)
    vals = [h.slack(v) for v in P.vertices]
    assume(min(vals) < 0 < max(vals))
    up = polytope_from_halfspaces(P.facets + (h,), (), 2)
    down = polytope_from_halfspaces(P.facets + (Halfspace((-a, -b), -c),), (), 2)
    assert up.volume + down.volume == P.volume


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 4))
def test_segment_volume_counts_lattice_steps(a, b, k):
    assume(a or b)
    P = polytope_from_vertices([(0, 0), (k * a, k * b)])
    assert P.volume == k * math.gcd(a, b)

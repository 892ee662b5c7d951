import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polytrop.errors import BadParams, InconsistentOnFaces, MissingData
from polytrop.geometry import AffineMap, apply_affine, is_face_of, relint_contains
from polytrop.skeleton import (
    CanonicalSimplex,
    Incidence,
    NondegEntry,
    SkeletonModel,
    Stratum,
    face_chart,
    nondeg_from_json,
    nondeg_to_json,
    nondegenerate_set,
    standard_simplex,
    subdivide_skeleton,
    validate_skeleton,
    vertex_stratum_table,
)
from polytrop.tropical_maps import ExponentMap

from conftest import full_simplex_model, half_square_grid, line_complex, node_model


def kinds(report):
    return sorted({v["violation"] for v in report})


def test_standard_simplex_examples():
    assert standard_simplex(2, 1).vertices == ((0, 0), (0, 1), (1, 0))
    assert standard_simplex(0, 1).dim == 0
    assert standard_simplex(1, F(3, 2)).vertices == ((0,), (F(3, 2),))
    with pytest.raises(BadParams):
        standard_simplex(1, 0)
    with pytest.raises(BadParams):
        standard_simplex(-1, 1)


def test_face_chart_lands_on_a_face():
    ch = face_chart(1, 2, [1, 2], F(1, 2))
    img = apply_affine(ch, standard_simplex(1, F(1, 2)))
    assert img.vertices == ((0, F(1, 2)), (F(1, 2), 0))
    assert is_face_of(img, standard_simplex(2, F(1, 2)))


def test_validate_examples():
    one = SkeletonModel(2, [Stratum("X", 2)], [CanonicalSimplex("X", 0, 1)])
    assert validate_skeleton(one) == []
    assert validate_skeleton(node_model()) == []
    bad = SkeletonModel(1, [Stratum("X", 0)], [CanonicalSimplex("X", 0, 1)])
    assert kinds(validate_skeleton(bad)) == ["CodimensionMismatch"]


def test_validate_detects_structure_errors():
    m = node_model()
    # dropping an incidence also cuts S2 loose
    assert kinds(validate_skeleton(SkeletonModel(1, m.strata, m.simplices, m.incidence[:1]))) == [
        "Disconnected",
        "MissingFace",
    ]
    doubled = m.incidence + (Incidence("S1", "S0", face_chart(0, 1, [1], 1)),)
    assert "AmbiguousFace" in kinds(validate_skeleton(SkeletonModel(1, m.strata, m.simplices, doubled)))
    up = (Incidence("S0", "S1", AffineMap([], [])),)
    assert "NotMonotone" in kinds(validate_skeleton(SkeletonModel(1, m.strata, m.simplices, m.incidence + up)))
    off = (Incidence("S1", "S0", AffineMap([[]], [F(1, 2)])), m.incidence[1])
    assert kinds(validate_skeleton(SkeletonModel(1, m.strata, m.simplices, off))) == ["ChartNotOntoFace"]
    split = SkeletonModel(
        1,
        m.strata + (Stratum("A", 0), Stratum("B", 1), Stratum("C", 1)),
        m.simplices + (CanonicalSimplex("A", 1, 1), CanonicalSimplex("B", 0, 1), CanonicalSimplex("C", 0, 1)),
        m.incidence
        + (Incidence("B", "A", face_chart(0, 1, [0], 1)), Incidence("C", "A", face_chart(0, 1, [1], 1))),
    )
    assert kinds(validate_skeleton(split)) == ["Disconnected"]
    vp = SkeletonModel(1, m.strata, (CanonicalSimplex("S0", 1, 2),) + m.simplices[1:], ())
    assert "VpiMismatch" in kinds(validate_skeleton(vp))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_full_simplex_models_validate(r):
    m = full_simplex_model(r, F(1, 2))
    assert validate_skeleton(m) == []
    assert SkeletonModel.from_json(json.loads(json.dumps(m.to_json()))) == m


def test_subdivide_examples():
    m = node_model()
    fm = {"S0": ExponentMap([[1]], [0]), "S1": ExponentMap([[]], [0]), "S2": ExponentMap([[]], [1])}
    target = line_complex([0, F(1, 2), 1], 2)
    sub = subdivide_skeleton(m, fm, target)
    assert sub.vertices("S0") == [(0,), (F(1, 2),), (1,)]
    const = {"S0": ExponentMap([[0]], [F(1, 4)]), "S1": ExponentMap([[]], [F(1, 4)]), "S2": ExponentMap([[]], [F(1, 4)])}
    assert len(subdivide_skeleton(m, const, target).top_cells("S0")) == 1
    dbl = {"S0": ExponentMap([[2]], [0]), "S1": ExponentMap([[]], [0]), "S2": ExponentMap([[]], [2])}
    sub = subdivide_skeleton(m, dbl, line_complex([0, 1, 2, 3], 4))
    assert sub.vertices("S0") == [(0,), (F(1, 2),), (1,)]


def test_subdivide_rejects_inconsistent_maps():
    m = node_model()
    fm = {"S0": ExponentMap([[1]], [0]), "S1": ExponentMap([[]], [0]), "S2": ExponentMap([[]], [F(1, 2)])}
    with pytest.raises(InconsistentOnFaces):
        subdivide_skeleton(m, fm, line_complex([0, 1], 2))
    with pytest.raises(MissingData):
        subdivide_skeleton(m, {"S0": fm["S0"]}, line_complex([0, 1], 2))


def test_vertex_table_examples():
    m = node_model(d=3)
    fm = {"S0": ExponentMap([[1]], [0]), "S1": ExponentMap([[]], [0]), "S2": ExponentMap([[]], [1])}
    sub = subdivide_skeleton(m, fm, line_complex([0, F(1, 2)], 1))
    rows = {(r.simplex, r.vertex): r for r in vertex_stratum_table(sub)}
    assert rows[("S0", (F(1, 2),))].dim == 3 and rows[("S0", (F(1, 2),))].stratum_dim == 2
    assert rows[("S1", ())].dim == 3 and rows[("S2", ())].torus_rank == 0
    assert len(rows) == 3
    point = SkeletonModel(2, [Stratum("X", 2)], [CanonicalSimplex("X", 0, 1)])
    table = vertex_stratum_table(subdivide_skeleton(point, {"X": ExponentMap([[]] * 2, [0, 0])}, half_square_grid()))
    assert [r.dim for r in table] == [2]


def test_nondeg_examples():
    m = node_model()
    nd = {"S0": NondegEntry(1, 0), "S1": NondegEntry(0, 1), "S2": NondegEntry(0, 0)}
    assert nondegenerate_set(m, nd) == {"S0", "S1"}
    nd["S0"] = NondegEntry(0, 0)
    assert "S0" not in nondegenerate_set(m, nd)
    m2 = full_simplex_model(2)
    nd2 = {s.stratum_id: NondegEntry(s.r, m2.stratum(s.stratum_id).dim) for s in m2.simplices}
    nd2["S01"] = NondegEntry(1, 0)
    assert "S01" not in nondegenerate_set(m2, nd2) and "S012" in nondegenerate_set(m2, nd2)
    with pytest.raises(MissingData):
        nondegenerate_set(m, {"S0": nd["S0"]})
    with pytest.raises(BadParams):
        nondegenerate_set(m, {**nd, "S0": NondegEntry(2, 0)})
    assert nondeg_from_json(nondeg_to_json(nd)) == nd


# -- properties ---------------------------------------------------------------


@given(st.data())
def test_nondegenerate_set_is_monotone(data):
    m = full_simplex_model(2)
    nd = {}
    for s in m.simplices:
        sd = m.stratum(s.stratum_id).dim
        nd[s.stratum_id] = NondegEntry(data.draw(st.integers(0, s.r)), data.draw(st.integers(0, sd)))
    base = nondegenerate_set(m, nd)
    sid = data.draw(st.sampled_from(m.ids))
    e = nd[sid]
    s = m.simplex(sid)
    raised = NondegEntry(min(e.image_dim + 1, s.r), min(e.abelian_image_dim + 1, m.stratum(sid).dim))
    assert base <= nondegenerate_set(m, {**nd, sid: raised})


@given(st.lists(st.fractions(min_value=0, max_value=F(7, 4), max_denominator=4), min_size=2, max_size=4, unique=True), st.integers(1, 3))
def test_subdivision_pieces_tile_each_simplex(bs, k):
    m = node_model()
    fm = {"S0": ExponentMap([[k]], [0]), "S1": ExponentMap([[]], [0]), "S2": ExponentMap([[]], [k])}
    sub = subdivide_skeleton(m, fm, line_complex(sorted(bs), 2))
    tops = sub.top_cells("S0")
    assert sum(P.volume for P in tops) == 1
    for a, b in itertools.combinations(tops, 2):
        assert a.vertices[-1] <= b.vertices[0] or b.vertices[-1] <= a.vertices[0]
    for row in vertex_stratum_table(sub):
        assert row.dim == m.d


@given(st.integers(0, 3), st.fractions(min_value=F(1, 4), max_value=3, max_denominator=4))
def test_vertex_records_have_complementary_dimension(r, vpi):
    m = full_simplex_model(r, vpi) if r else SkeletonModel(0, [Stratum("S0", 0)], [CanonicalSimplex("S0", 0, vpi)])
    fm = {s.stratum_id: ExponentMap([[0] * s.r], [0]) if s.r else ExponentMap([[]], [0]) for s in m.simplices}
    sub = subdivide_skeleton(m, fm, line_complex([0, F(1, 2)], 1))
    for row in vertex_stratum_table(sub):
        assert row.dim == m.d
        assert relint_contains(m.simplex(row.simplex).polytope, row.vertex)

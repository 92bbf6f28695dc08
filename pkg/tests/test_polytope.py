from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from momentcut.corpus import box, delzant_corpus, simplex
from momentcut.errors import InputError, NotSimple
from momentcut.lattice import dot
from momentcut.polytope import (
    Facet,
    LabeledPolytope,
    canonical_equal,
    dumps,
    from_json_dict,
    irredundant,
    is_regular_level,
    loads,
    slice_at,
    to_json_dict,
    transform,
    validate,
    vertices,
    volume,
)

from conftest import edge_hyperplane_points, random_unimodular, regular_levels

F = Fraction


def octahedron():
    return LabeledPolytope(3, [Facet((sx, sy, sz), F(1))
                               for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)])


# -- validation --------------------------------------------------------------

def test_validate_square(square):
    assert validate(square).valid


def test_validate_octahedron_not_simple():
    rep = validate(octahedron())
    assert not rep.valid
    assert any("not simple" in f for f in rep.failures)


def test_validate_duplicate_facet(square):
    facets = list(square.facets) + [Facet((0, 1), F(1))]
    rep = validate(LabeledPolytope(2, facets))
    assert not rep.valid
    assert any("redundant" in f or "duplicate" in f for f in rep.failures)


def test_validate_redundant_facet(square):
    facets = list(square.facets) + [Facet((1, 1), F(5))]
    rep = validate(LabeledPolytope(2, facets))
    assert not rep.valid
    assert any("redundant" in f for f in rep.failures)


def test_validate_unbounded():
    rep = validate(LabeledPolytope(2, [Facet((-1, 0), F(0)), Facet((0, -1), F(0)),
                                       Facet((0, 1), F(1))]))
    assert not rep.valid
    assert any("unbounded" in f for f in rep.failures)


def test_validate_empty():
    rep = validate(LabeledPolytope(1, [Facet((1,), F(-1)), Facet((-1,), F(-1))]))
    assert not rep.valid


def test_validate_dimension_cap():
    facets = []
    for i in range(9):
        lo = tuple(-1 if j == i else 0 for j in range(9))
        hi = tuple(1 if j == i else 0 for j in range(9))
        facets += [Facet(lo, F(0)), Facet(hi, F(1))]
    rep = validate(LabeledPolytope(9, facets))
    assert not rep.valid
    assert "exceeds" in rep.failures[0]


def test_constructor_rejects_nonprimitive():
    with pytest.raises(InputError, match="primitive"):
        LabeledPolytope(2, [Facet((2, 4), F(1)), Facet((-1, 0), F(0)),
                            Facet((0, 1), F(1)), Facet((0, -1), F(0))])


def test_constructor_rejects_bad_label():
    with pytest.raises(InputError, match="label"):
        LabeledPolytope(1, [Facet((1,), F(1), 0), Facet((-1,), F(0))])


# -- vertices ----------------------------------------------------------------

def test_vertices_square(square):
    pts = {v.point for v in vertices(square)}
    assert pts == {(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))}


def test_vertices_simplex(simplex2):
    assert {v.point for v in vertices(simplex2)} == {
        (F(0), F(0)), (F(1), F(0)), (F(0), F(1))}


def test_vertices_pex2(pex2):
    assert {v.point for v in vertices(pex2)} == {
        (F(-1), F(0)), (F(1), F(1)), (F(1), F(-1))}


def test_vertices_active_sets(square):
    for v in vertices(square):
        assert len(v.active) == 2
        for i in v.active:
            f = square.facets[i]
            assert dot(f.normal, v.point) == f.offset


def test_vertices_not_simple_raises():
    with pytest.raises(NotSimple):
        vertices(octahedron())


# -- slicing -----------------------------------------------------------------

def test_slice_square_midline(square):
    sl = slice_at(square, F(1, 2))
    seg = sl.polytope
    assert seg.dim == 1
    assert {f.key() for f in seg.facets} == {((1,), F(1), 1), ((-1,), F(0), 1)}


def test_slice_simplex3(simplex3):
    sl = slice_at(simplex3, F(1, 4)).polytope
    assert {f.key() for f in sl.facets} == {
        ((-1, 0), F(0), 1), ((0, -1), F(0), 1), ((1, 1), F(3, 4), 1)}


def test_slice_delta3_quadrilateral(d3):
    sl = slice_at(d3, F(1, 2)).polytope
    pts = {v.point for v in vertices(sl)}
    assert pts == {(F(1, 2), F(0)), (F(0), F(1, 2)), (F(3, 4), F(0)), (F(0), F(3, 4))}


def test_slice_outside_is_empty(d3):
    assert slice_at(d3, F(2)).empty
    assert slice_at(d3, F(-2)).empty


def test_slice_degenerate_at_apex(simplex3):
    sl = slice_at(simplex3, F(1))
    assert sl.polytope is None and sl.degenerate


def test_slice_labels_inherited():
    P = LabeledPolytope(2, [Facet((-1, 0), F(0), 3), Facet((1, 0), F(1), 1),
                            Facet((0, -1), F(0), 2), Facet((0, 1), F(1), 5)])
    sl = slice_at(P, F(1, 2))
    labels = {f.key()[2] for f in sl.polytope.facets}
    assert labels == {2, 5}


def test_slice_edge_oracle_on_corpus():
    rng = random.Random(2024)
    for name, P in delzant_corpus():
        for s in regular_levels(P, rng, 3):
            sl = slice_at(P, s)
            got = {v.point for v in vertices(sl.polytope)}
            assert got == edge_hyperplane_points(P, s), (name, s)


# -- volume ------------------------------------------------------------------

def test_volume_unit_square(square):
    assert volume(square) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_volume_standard_simplex(n):
    assert volume(simplex(n)) == F(1, math.factorial(n))


def test_volume_delta3(d3):
    assert volume(d3) == F(1, 6)


def test_volume_unimodular_invariance():
    rng = random.Random(5)
    for name, P in [("square", box(F(1), F(1))), ("simplex-3", simplex(3))]:
        base = volume(P)
        for _ in range(5):
            A = random_unimodular(rng, P.dim)
            b = tuple(F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(P.dim))
            assert volume(transform(P, A, b)) == base, name


def test_volume_segment():
    seg = LabeledPolytope(1, [Facet((1,), F(5, 2)), Facet((-1,), F(1))])
    assert volume(seg) == F(7, 2)


# -- regular levels ----------------------------------------------------------

def test_is_regular_level(square, d3):
    assert is_regular_level(square, F(1, 2))
    assert not is_regular_level(square, F(0))
    assert not is_regular_level(d3, F(0))


# -- transforms --------------------------------------------------------------

def test_transform_translation(square):
    Q = transform(square, [[1, 0], [0, 1]], (F(1), F(0)))
    offsets = {f.normal: f.offset for f in Q.facets}
    assert offsets[(1, 0)] == 2 and offsets[(-1, 0)] == -1
    assert offsets[(0, 1)] == 1 and offsets[(0, -1)] == 0


def test_transform_simplex_to_delta3(simplex3, d3):
    A = [[-1, 1, 1], [0, 1, 0], [0, 0, 1]]
    assert canonical_equal(transform(simplex3, A, (F(0),) * 3), d3)


def test_transform_round_trip(d3):
    rng = random.Random(9)
    A = random_unimodular(rng, 3)
    from momentcut.lattice import inverse_unimodular
    b = (F(1, 2), F(-1, 3), F(2))
    Ainv = inverse_unimodular(A)
    binv = tuple(-sum(F(Ainv[i][k]) * b[k] for k in range(3)) for i in range(3))
    assert canonical_equal(transform(transform(d3, A, b), Ainv, binv), d3)


# -- canonical equality ------------------------------------------------------

def test_canonical_equal_permuted(square):
    Q = LabeledPolytope(2, list(reversed(square.facets)))
    assert canonical_equal(square, Q)


def test_canonical_equal_scaled(square):
    assert not canonical_equal(square, box(F(2), F(2)))


def test_canonical_equal_ignores_redundant(square):
    Q = LabeledPolytope(2, list(square.facets) + [Facet((1, 1), F(7))])
    assert canonical_equal(square, Q)
    assert len(irredundant(Q).facets) == 4


# -- file format -------------------------------------------------------------

def test_json_roundtrip_bit_exact(d3, pex2, square):
    for P in (d3, pex2, square):
        text = dumps(P)
        Q = loads(text)
        assert dumps(Q) == text
        assert canonical_equal(P, Q)


def test_json_rejects_nonprimitive_with_suggestion():
    with pytest.raises(InputError, match=r"\[1, 2\]"):
        from_json_dict({"dim": 2, "facets": [
            {"normal": [2, 4], "offset": "1", "label": 1}]})


def test_json_rejects_float_offset():
    with pytest.raises(InputError, match="float"):
        from_json_dict({"dim": 2, "facets": [
            {"normal": [1, 0], "offset": 0.5, "label": 1}]})


def test_json_rejects_bad_json():
    with pytest.raises(InputError, match="JSON"):
        loads("{not json")


def test_json_offsets_as_integers_accepted():
    P = from_json_dict({"dim": 1, "facets": [
        {"normal": [1], "offset": 3, "label": 1},
        {"normal": [-1], "offset": "0", "label": 1}]})
    assert volume(P) == 3


def test_corpus_validates():
    for name, P in delzant_corpus():
        assert validate(P).valid, name


def test_slice_nonempty_iff_in_vertex_range(d3):
    xs = [v.point[0] for v in vertices(d3)]
    lo, hi = min(xs), max(xs)
    for s in [lo - 1, hi + F(1, 7)]:
        assert slice_at(d3, s).empty
    for s in [lo, hi, F(1, 3), F(-2, 3)]:
        assert slice_at(d3, s).polytope is not None or slice_at(d3, s).degenerate


def test_slice_facets_biject_with_active_inducing(d3):
    # at a regular level each slice facet comes from one facet of P and is
    # active at some slice vertex
    sl = slice_at(d3, F(1, 2))
    assert len(set(sl.inducing)) == len(sl.inducing)
    verts = vertices(sl.polytope)
    for i in range(len(sl.polytope.facets)):
        assert any(i in v.active for v in verts)

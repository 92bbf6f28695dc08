from __future__ import annotations

import random
from fractions import Fraction

import pytest

from momentcut.corpus import delzant_corpus
from momentcut.errors import LabeledFaceUnsupported
from momentcut.lattice import det_int, inverse_unimodular, mat_vec_int, transpose
from momentcut.polytope import Facet, LabeledPolytope, transform, vertices
from momentcut.toric import (
    INFINITE,
    VertexKind,
    circle_stabilizer_order,
    classify_vertex,
    edge_generators,
    fixed_components,
    weights_at_vertex,
)

from conftest import random_unimodular

F = Fraction


def vertex_at(P, point):
    point = tuple(F(c) for c in point)
    return next(v for v in vertices(P) if v.point == point)


# -- classification ----------------------------------------------------------

def test_classify_square_corner(square):
    cls = classify_vertex(square, vertex_at(square, (0, 0)))
    assert cls.kind == VertexKind.SMOOTH and cls.index == 1


def test_classify_pex2(pex2):
    assert classify_vertex(pex2, vertex_at(pex2, (-1, 0))).kind == VertexKind.OTHER_ORBIFOLD
    assert classify_vertex(pex2, vertex_at(pex2, (-1, 0))).index == 4
    for pt in [(1, 1), (1, -1)]:
        cls = classify_vertex(pex2, vertex_at(pex2, pt))
        assert cls.kind == VertexKind.Z2_SINGULAR
        assert cls.index == 2 and cls.half_sum_integral


def test_classify_labeled_vertex_is_orbifold():
    P = LabeledPolytope(2, [Facet((-1, 0), F(0), 2), Facet((1, 0), F(1)),
                            Facet((0, -1), F(0)), Facet((0, 1), F(1))])
    cls = classify_vertex(P, vertex_at(P, (0, 0)))
    assert cls.kind == VertexKind.OTHER_ORBIFOLD and cls.index == 1


def test_classify_invariant_under_unimodular(pex2):
    rng = random.Random(3)
    for _ in range(5):
        A = random_unimodular(rng, 2)
        Q = transform(pex2, A, (F(0), F(0)))
        kinds = sorted(classify_vertex(Q, v).kind.value for v in vertices(Q))
        assert kinds == sorted(classify_vertex(pex2, v).kind.value
                               for v in vertices(pex2))


# -- edge generators and weights ----------------------------------------------

def test_edge_generators_square_corner(square):
    gens = set(edge_generators(square, vertex_at(square, (0, 0))))
    assert gens == {(0, 1), (1, 0)}


def test_edge_generators_z2_example():
    P = LabeledPolytope(2, [Facet((0, 1), F(1, 2)), Facet((-1, 2), F(1)),
                            Facet((1, 0), F(1))])
    gens = set(edge_generators(P, vertex_at(P, (0, F(1, 2)))))
    assert gens == {(1, 0), (-2, -1)}


def test_edge_generators_delta3(d3):
    gens = set(edge_generators(d3, vertex_at(d3, (-1, 0, 0))))
    assert gens == {(1, 0, 0), (2, 1, 0), (2, 0, 1)}


def test_weights_examples(square, d3):
    assert weights_at_vertex(square, vertex_at(square, (0, 0))) == (0, 1)
    assert weights_at_vertex(d3, vertex_at(d3, (0, 0, 0))) == (-1, 1, 1)


def test_weights_transform_covariance(d3):
    rng = random.Random(17)
    xi = (1, 0, 0)
    for _ in range(5):
        A = random_unimodular(rng, 3)
        b = (F(1, 3), F(0), F(-2))
        Q = transform(d3, A, b)
        xi_t = tuple(mat_vec_int(transpose(inverse_unimodular(A)), xi))
        for v in vertices(d3):
            img = tuple(sum(F(A[i][k]) * v.point[k] for k in range(3)) + b[i]
                        for i in range(3))
            assert weights_at_vertex(Q, vertex_at(Q, img), xi_t) == \
                weights_at_vertex(d3, v, xi)


def test_edge_generator_determinant_invariant(pex2, square):
    # |det of edge generators| is 1 at smooth vertices, 2 at Z2 vertices
    for P in (square, pex2):
        for v in vertices(P):
            cls = classify_vertex(P, v)
            d = abs(det_int([list(e) for e in edge_generators(P, v)]))
            if cls.kind == VertexKind.SMOOTH:
                assert d == 1
            elif cls.kind == VertexKind.Z2_SINGULAR:
                assert d == 2


def test_extreme_vertices_weight_signs():
    # weights at the level-minimal vertex are >= 0, at the maximal <= 0
    for name, P in delzant_corpus():
        verts = vertices(P)
        lo = min(v.point[0] for v in verts)
        hi = max(v.point[0] for v in verts)
        for v in verts:
            w = weights_at_vertex(P, v)
            if v.point[0] == lo:
                assert all(x >= 0 for x in w), name
            if v.point[0] == hi:
                assert all(x <= 0 for x in w), name


# -- stabilizers ---------------------------------------------------------------

def test_stabilizer_examples(square, pex2):
    horizontal = next(i for i, f in enumerate(square.facets) if f.normal == (0, -1))
    assert circle_stabilizer_order(square, {horizontal}) == 1
    slanted = next(i for i, f in enumerate(pex2.facets) if f.normal == (-1, 2))
    assert circle_stabilizer_order(pex2, {slanted}) == 2
    vertical = next(i for i, f in enumerate(pex2.facets) if f.normal == (1, 0))
    assert circle_stabilizer_order(pex2, {vertical}) == INFINITE


def test_stabilizer_label_multiplies():
    P = LabeledPolytope(2, [Facet((-1, 2), F(1), 3), Facet((-1, -2), F(1)),
                            Facet((1, 0), F(1))])
    i = next(i for i, f in enumerate(P.facets) if f.normal == (-1, 2))
    assert circle_stabilizer_order(P, {i}) == 6


def test_stabilizer_labeled_codim2_unsupported():
    P = LabeledPolytope(2, [Facet((-1, 2), F(1), 3), Facet((-1, -2), F(1)),
                            Facet((1, 0), F(1))])
    v = vertex_at(P, (-1, 0))
    with pytest.raises(LabeledFaceUnsupported):
        circle_stabilizer_order(P, v.active)


def test_stabilizer_divides_vertex_index(pex2):
    # facet order divides the lattice index of any vertex on that facet
    for i, f in enumerate(pex2.facets):
        order = circle_stabilizer_order(pex2, {i})
        if order == INFINITE:
            continue
        for v in vertices(pex2):
            if i in v.active:
                idx = classify_vertex(pex2, v).index
                assert idx % order == 0


# -- fixed components ----------------------------------------------------------

def test_fixed_components_square(square):
    comps = fixed_components(square)
    assert len(comps) == 2
    assert sorted(c.level for c in comps) == [0, 1]
    assert all(len(c.active) == 1 for c in comps)


def test_fixed_components_pex2(pex2):
    comps = fixed_components(pex2)
    assert len(comps) == 2
    isolated = [c for c in comps if c.isolated]
    assert len(isolated) == 1 and isolated[0].vertex_points == ((F(-1), F(0)),)
    edge = [c for c in comps if not c.isolated][0]
    assert edge.level == 1 and len(edge.vertex_points) == 2


def test_fixed_components_delta3(d3):
    comps = fixed_components(d3)
    by_level = {c.level: c for c in comps}
    assert set(by_level) == {F(-1), F(0), F(1)}
    assert by_level[F(-1)].isolated
    assert by_level[F(0)].isolated
    assert not by_level[F(1)].isolated


def test_fixed_levels_are_subset_of_critical(d3):
    from momentcut.dh import critical_values

    levels = {c.level for c in fixed_components(d3)}
    assert levels <= set(critical_values(d3))

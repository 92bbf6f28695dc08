"""Bundled family of smooth (Delzant) labeled polytopes.

Used by the regression suite: every member validates, has a log-concave
density profile, and shows no strict interior local minimum.  The family
mixes boxes, simplices, corner chops, products and a 24-facet 4-polytope
that doubles as the performance fixture.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .polytope import Facet, LabeledPolytope

F = Fraction


def box(*sides: Fraction) -> LabeledPolytope:
    """[0, s1] x ... x [0, sn]."""
    n = len(sides)
    facets = []
    for i, s in enumerate(sides):
        lo = tuple(-1 if j == i else 0 for j in range(n))
        hi = tuple(1 if j == i else 0 for j in range(n))
        facets.append(Facet(lo, F(0)))
        facets.append(Facet(hi, F(s)))
    return LabeledPolytope(n, facets)


def simplex(n: int, scale: Fraction = F(1)) -> LabeledPolytope:
    facets = [Facet(tuple(-1 if j == i else 0 for j in range(n)), F(0))
              for i in range(n)]
    facets.append(Facet((1,) * n, F(scale)))
    return LabeledPolytope(n, facets)


def delta3() -> LabeledPolytope:
    """Unimodular image of the standard 3-simplex; walls at -1, 0, 1."""
    return LabeledPolytope(3, [
        Facet((1, -1, -1), F(0)),
        Facet((0, -1, 0), F(0)),
        Facet((0, 0, -1), F(0)),
        Facet((-1, 2, 2), F(1)),
    ])


def asymmetric_wedge() -> LabeledPolytope:
    """Triangle with the two inner Z2 vertices; min vertex has index 4."""
    return LabeledPolytope(2, [
        Facet((-1, 2), F(1)),
        Facet((-1, -2), F(1)),
        Facet((1, 0), F(1)),
    ])


def chopped_square(depth: Fraction = F(1, 2)) -> LabeledPolytope:
    facets = list(box(F(1), F(1)).facets)
    facets.append(Facet((1, 1), F(2) - F(depth)))
    return LabeledPolytope(2, facets)


def hexagon() -> LabeledPolytope:
    return LabeledPolytope(2, [
        Facet((-1, 0), F(0)), Facet((0, -1), F(0)),
        Facet((1, 0), F(2)), Facet((0, 1), F(2)),
        Facet((-1, -1), F(-1)), Facet((1, 1), F(3)),
    ])


def trapezoid(a: int = 1) -> LabeledPolytope:
    """Hirzebruch-style trapezoid: 0 <= y <= 1, x >= 0, x + a y <= a + 1."""
    return LabeledPolytope(2, [
        Facet((-1, 0), F(0)), Facet((0, -1), F(0)),
        Facet((0, 1), F(1)), Facet((1, a), F(a + 1)),
    ])


def prism() -> LabeledPolytope:
    """2-simplex x [0, 1], long axis first."""
    return LabeledPolytope(3, [
        Facet((-1, 0, 0), F(0)), Facet((0, -1, 0), F(0)),
        Facet((1, 1, 0), F(1)),
        Facet((0, 0, -1), F(0)), Facet((0, 0, 1), F(1)),
    ])


def chopped_cube() -> LabeledPolytope:
    facets = list(box(F(1), F(1), F(1)).facets)
    facets.append(Facet((1, 1, 1), F(11, 4)))
    return LabeledPolytope(3, facets)


def chopped_hypercube() -> LabeledPolytope:
    """Unit 4-cube with all 16 corners chopped at depth 1/4: 24 facets.

    The standard stress fixture for enumeration timing.
    """
    facets = list(box(F(1), F(1), F(1), F(1)).facets)
    for bits in product((0, 1), repeat=4):
        # chop normal = sum of the outward normals active at the corner
        normal = tuple(1 if b else -1 for b in bits)
        offset = F(sum(bits)) - F(1, 4)
        facets.append(Facet(normal, offset))
    return LabeledPolytope(4, facets)


def delzant_corpus() -> list[tuple[str, LabeledPolytope]]:
    return [
        ("unit-square", box(F(1), F(1))),
        ("flat-box", box(F(2), F(1))),
        ("simplex-2", simplex(2)),
        ("simplex-2-doubled", simplex(2, F(2))),
        ("simplex-3", simplex(3)),
        ("delta3", delta3()),
        ("chopped-square", chopped_square()),
        ("hexagon", hexagon()),
        ("trapezoid", trapezoid()),
        ("unit-cube", box(F(1), F(1), F(1))),
        ("prism", prism()),
        ("chopped-cube", chopped_cube()),
        ("hypercube", box(F(1), F(1), F(1), F(1))),
        ("chopped-hypercube", chopped_hypercube()),
    ]

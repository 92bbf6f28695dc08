"""Circle-action semantics on labeled polytopes.

The distinguished circle acts along the first coordinate direction e1.
Vertex classification, weights at fixed vertices, stabilizer orders over
faces and the fixed-point inventory are all exact lattice computations.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import DegenerateVertex, LabeledFaceUnsupported, PreconditionError
from .lattice import (
    IntVector,
    content,
    dot,
    half_sum_integral,
    in_rational_span,
    integer_kernel_basis,
    lattice_index,
    primitive,
)
from .polytope import LabeledPolytope, Vertex, _kernel_direction, vertices

INFINITE = "infinite"


class VertexKind(enum.Enum):
    SMOOTH = "smooth"
    Z2_SINGULAR = "z2"
    OTHER_ORBIFOLD = "orbifold"


@dataclass(frozen=True)
class VertexClass:
    kind: VertexKind
    index: Optional[int]          # lattice index of the active normals
    half_sum_integral: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "index": self.index,
            "half_sum_integral": self.half_sum_integral,
        }


def classify_vertex(P: LabeledPolytope, v: Vertex) -> VertexClass:
    """Smooth / Z2 / other, from the lattice index of the active normals.

    A vertex incident to a facet with label > 1 is an orbifold point no
    matter what the normals generate, so labels enter the classification.
    """
    normals = [P.facets[i].normal for i in sorted(v.active)]
    idx = lattice_index(normals)
    half = half_sum_integral(normals) if idx is not None else False
    labels_one = all(P.facets[i].label == 1 for i in v.active)
    if idx == 1 and labels_one:
        kind = VertexKind.SMOOTH
    elif idx == 2 and half and labels_one:
        kind = VertexKind.Z2_SINGULAR
    else:
        kind = VertexKind.OTHER_ORBIFOLD
    return VertexClass(kind, idx, half)


def edge_generators(P: LabeledPolytope, v: Vertex) -> list[IntVector]:
    """Primitive edge directions at a simple vertex, one per active facet.

    Entry k relaxes the k-th facet of sorted(v.active): it pairs to zero
    with every other active normal and strictly negatively with its own.
    """
    n = P.dim
    act = sorted(v.active)
    if len(act) != n:
        raise DegenerateVertex(f"vertex has {len(act)} active facets, expected {n}")
    gens: list[IntVector] = []
    for i in act:
        others = [P.facets[j].normal for j in act if j != i]
        e = _kernel_direction(others, n)
        if e is None:
            raise DegenerateVertex("active normals are linearly dependent")
        pairing = dot(P.facets[i].normal, e)
        if pairing > 0:
            e = tuple(-x for x in e)
        elif pairing == 0:
            raise DegenerateVertex("edge direction does not relax its facet")
        gens.append(e)
    return gens


def weights_at_vertex(P: LabeledPolytope, v: Vertex,
                      xi: Optional[Sequence[int]] = None) -> tuple[int, ...]:
    """Multiset (sorted tuple) of pairings of xi with the edge generators."""
    if xi is None:
        xi = (1,) + (0,) * (P.dim - 1)
    return tuple(sorted(dot(xi, e) for e in edge_generators(P, v)))


def circle_stabilizer_order(P: LabeledPolytope, face: frozenset[int] | Sequence[int]):
    """Order of the stabilizer of the e1-circle over the given face.

    Returns "infinite" when e1 lies in the real span of the face normals
    (the face is fixed); otherwise the order of the finite cyclic group
    {s in R/Z : s e1 in (span_R(normals) + Z^n)/Z^n}, computed from an
    integer basis of the orthogonal complement lattice.  A facet label
    k > 1 multiplies the order of its own facet-interior stabilizer;
    labeled faces of codimension >= 2 are not supported.
    """
    face = frozenset(face)
    if not face:
        return 1
    labels = [P.facets[i].label for i in face]
    if any(l > 1 for l in labels) and len(face) >= 2:
        raise LabeledFaceUnsupported(
            "stabilizer order over a codimension >= 2 face with labeled facets")
    normals = [P.facets[i].normal for i in face]
    e1 = (1,) + (0,) * (P.dim - 1)
    if in_rational_span(normals, e1):
        return INFINITE
    # integer vectors orthogonal to the face span; the order is the gcd of
    # their first components
    kernel = integer_kernel_basis([list(nu) for nu in normals])
    g = 0
    for u in kernel:
        g = math.gcd(g, u[0])
    if g == 0:
        return INFINITE
    order = g
    if len(face) == 1:
        order *= labels[0]
    return order


@dataclass(frozen=True)
class FixedComponent:
    """A face pointwise fixed by the e1-circle (constant first coordinate)."""

    active: frozenset[int]
    level: Fraction
    vertex_points: tuple[tuple[Fraction, ...], ...]

    @property
    def isolated(self) -> bool:
        return len(self.vertex_points) == 1

    def to_json(self) -> dict:
        from .lattice import format_rational

        return {
            "active_facets": sorted(self.active),
            "level": format_rational(self.level),
            "vertices": [[format_rational(c) for c in p] for p in self.vertex_points],
            "isolated": self.isolated,
        }


def fixed_components(P: LabeledPolytope) -> list[FixedComponent]:
    """Faces minimal (by active set) with e1 in the span of their normals."""
    verts = vertices(P)
    e1 = (1,) + (0,) * (P.dim - 1)
    # collect candidate faces: subsets of vertex active sets, smallest first
    subsets: set[frozenset[int]] = set()
    for v in verts:
        act = sorted(v.active)
        for size in range(1, len(act) + 1):
            for sub in combinations(act, size):
                subsets.add(frozenset(sub))
    minimal: list[frozenset[int]] = []
    for s in sorted(subsets, key=lambda s: (len(s), sorted(s))):
        if any(m <= s for m in minimal):
            continue
        normals = [P.facets[i].normal for i in s]
        if in_rational_span(normals, e1):
            minimal.append(s)
    out = []
    for s in minimal:
        pts = tuple(v.point for v in verts if s <= v.active)
        level = pts[0][0]
        out.append(FixedComponent(s, level, pts))
    out.sort(key=lambda c: (c.level, sorted(c.active)))
    return out


def fixed_levels(P: LabeledPolytope) -> list[Fraction]:
    return sorted({c.level for c in fixed_components(P)})


def min_max_levels(P: LabeledPolytope) -> tuple[Fraction, Fraction]:
    xs = [v.point[0] for v in vertices(P)]
    if not xs:
        raise PreconditionError("no vertices")
    return min(xs), max(xs)

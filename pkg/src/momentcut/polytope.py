"""Labeled rational simple polytopes in H-representation.

A polytope is a finite list of facets (primitive integer outward normal,
rational offset, positive integer label); the point set is
{x : <normal, x> <= offset for every facet}.  All computations are exact.

Vertex enumeration solves every n-subset of facets and keeps feasible
solutions; boundedness is certified by checking that no edge at any vertex
is an unbounded ray.  Unbounded but pointed H-representations are tolerated
by the operations that need them (cutting a half-infinite region down to a
compact one); `validate` still rejects them.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatch,
    InputError,
    InternalError,
    NotSimple,
    NotUnimodular,
    PreconditionError,
)
from .lattice import (
    IntVector,
    content,
    det_int,
    dot,
    format_rational,
    inverse_unimodular,
    parse_rational,
    primitive,
    rank_rational,
    transpose,
)

MAX_DIM = 8


@dataclass(frozen=True)
class Facet:
    normal: IntVector
    offset: Fraction
    label: int = 1

    def key(self) -> tuple:
        return (self.normal, self.offset, self.label)


@dataclass(frozen=True)
class Vertex:
    point: tuple[Fraction, ...]
    active: frozenset[int]


class LabeledPolytope:
    """Immutable H-representation; geometric structure is computed lazily."""

    def __init__(self, dim: int, facets: Iterable[Facet]):
        if dim < 1:
            raise InputError(f"dimension must be >= 1, got {dim}")
        # canonical facet order keeps indices stable across serialization
        facets = tuple(sorted(facets, key=lambda f: f.key()))
        if not facets:
            raise InputError("a polytope needs at least one facet")
        for i, f in enumerate(facets):
            if len(f.normal) != dim:
                raise InputError(f"facet {i}: normal has length {len(f.normal)}, expected {dim}")
            if not any(f.normal):
                raise InputError(f"facet {i}: zero normal")
            if content(f.normal) != 1:
                g = content(f.normal)
                fixed = tuple(x // g for x in f.normal)
                raise InputError(
                    f"facet {i}: normal {list(f.normal)} is not primitive; "
                    f"use {list(fixed)} with offset {format_rational(Fraction(f.offset) / g)}"
                )
            if f.label < 1:
                raise InputError(f"facet {i}: label must be a positive integer, got {f.label}")
        self.dim = dim
        self.facets = facets
        self._structure: Optional[Structure] = None

    def __repr__(self) -> str:
        return f"LabeledPolytope(dim={self.dim}, facets={len(self.facets)})"

    def structure(self, bounded_hint: bool = False) -> "Structure":
        if self._structure is None:
            self._structure = _compute_structure(self, bounded_hint)
        return self._structure


@dataclass(frozen=True)
class Structure:
    """Everything vertex enumeration learns about one H-representation."""

    points: tuple[tuple[tuple[Fraction, ...], frozenset[int]], ...]
    simple: bool
    pointed: bool
    rays: tuple[IntVector, ...]          # primitive unbounded edge directions
    bounded: bool
    full_dim: bool
    redundant: frozenset[int]
    affine_rank: int

    @property
    def vertex_points(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(p for p, _ in self.points)


def _scaled_rows(facets: Sequence[Facet]) -> tuple[list[tuple[int, ...]], list[int], int]:
    """Clear offset denominators: returns (normals, scaled offsets, scale L)."""
    lcm = 1
    for f in facets:
        d = Fraction(f.offset).denominator
        lcm = lcm * d // math.gcd(lcm, d)
    normals = [tuple(f.normal) for f in facets]
    offs = [int(Fraction(f.offset) * lcm) for f in facets]
    return normals, offs, lcm


def _solve_subset_int(normals, offs, subset, n):
    """Solve the n x n integer system for one facet subset via Bareiss.

    Returns (num_vector, positive_denominator) or None when singular.
    """
    a = [list(normals[i]) + [offs[i]] for i in subset]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return None
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            f = row_i[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    det = sign * a[n - 1][n - 1]
    if det == 0:
        return None
    num = [0] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] * det - sum(a[i][j] * num[j] for j in range(i + 1, n))
        num[i] = s // a[i][i]
    if det < 0:
        num = [-x for x in num]
        det = -det
    return num, det


def _kernel_direction(rows: list[IntVector], n: int) -> Optional[IntVector]:
    """Primitive kernel vector of an (n-1) x n integer matrix of full rank."""
    if n == 1:
        return (1,)
    d = []
    for k in range(n):
        minor = [[row[c] for c in range(n) if c != k] for row in rows]
        d.append((-1) ** k * det_int(minor))
    if not any(d):
        return None
    return primitive(d)


def _compute_structure(P: LabeledPolytope, bounded_hint: bool) -> Structure:
    n = P.dim
    m = len(P.facets)
    normals, offs, lcm = _scaled_rows(P.facets)
    # pointedness: do the normals span R^n
    pointed = rank_rational(normals) == n

    feasible: dict[tuple, tuple[tuple[Fraction, ...], set[int]]] = {}
    if m >= n:
        for subset in combinations(range(m), n):
            sol = _solve_subset_int(normals, offs, subset, n)
            if sol is None:
                continue
            num, den = sol
            key = _point_key(num, den)
            if key in feasible:
                continue
            ok = True
            active: set[int] = set()
            for j in range(m):
                lhs = dot(normals[j], num)
                rhs = offs[j] * den
                if lhs > rhs:
                    ok = False
                    break
                if lhs == rhs:
                    active.add(j)
            if ok:
                # num/den solves the system scaled by lcm; unscale
                point = tuple(Fraction(x, den * lcm) for x in num)
                feasible[key] = (point, active)

    points = tuple((pt, frozenset(act)) for pt, act in feasible.values())
    points = tuple(sorted(points, key=lambda pa: pa[0]))
    simple = all(len(act) == n for _, act in points)

    rays: list[IntVector] = []
    rays_known = bool(bounded_hint)
    if points and pointed and not bounded_hint:
        if simple:
            # unbounded edges at vertices: every extreme recession ray of a
            # pointed polyhedron shows up as one
            seen = set()
            for pt, act in points:
                act_sorted = sorted(act)
                for i in act_sorted:
                    others = [normals[j] for j in act_sorted if j != i]
                    e = _kernel_direction(others, n)
                    if e is None:
                        continue
                    if dot(normals[i], e) > 0:
                        e = tuple(-x for x in e)
                    if dot(normals[i], e) >= 0:
                        continue
                    if all(dot(normals[j], e) <= 0 for j in range(m)) and e not in seen:
                        seen.add(e)
                        rays.append(e)
        else:
            # non-simple: enumerate extreme rays of the recession cone from
            # (n-1)-subsets of normals
            seen = set()
            for subset in combinations(range(m), n - 1) if n > 1 else [()]:
                rows = [normals[j] for j in subset]
                e = _kernel_direction(rows, n) if n > 1 else (1,)
                if e is None:
                    continue
                for cand in (e, tuple(-x for x in e)):
                    if cand in seen:
                        continue
                    if all(dot(normals[j], cand) <= 0 for j in range(m)):
                        seen.add(cand)
                        rays.append(cand)
        rays_known = True
    bounded = rays_known and not rays

    if points:
        base = points[0][0]
        diffs = [[q - b for q, b in zip(pt, base)] for pt, _ in points[1:]]
        diffs += [list(r) for r in rays]
        affine_rank = rank_rational(diffs) if diffs else 0
    else:
        affine_rank = -1
    full_dim = affine_rank == n

    redundant: set[int] = set()
    if points and full_dim and rays_known:
        for i in range(m):
            incident = [pt for pt, act in points if i in act]
            inc_rays = [r for r in rays if dot(normals[i], r) == 0]
            if not incident:
                redundant.add(i)
                continue
            base = incident[0]
            diffs = [[q - b for q, b in zip(pt, base)] for pt in incident[1:]]
            diffs += [list(r) for r in inc_rays]
            if (rank_rational(diffs) if diffs else 0) != n - 1:
                redundant.add(i)

    return Structure(
        points=points,
        simple=simple,
        pointed=pointed,
        rays=tuple(rays),
        bounded=bounded,
        full_dim=full_dim,
        redundant=frozenset(redundant),
        affine_rank=affine_rank,
    )


def _point_key(num: list[int], den: int) -> tuple:
    g = den
    for x in num:
        g = math.gcd(g, x)
    return (tuple(x // g for x in num), den // g)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def vertices(P: LabeledPolytope) -> list[Vertex]:
    """All vertices with their active facet sets, sorted by coordinates."""
    st = P.structure()
    for pt, act in st.points:
        if len(act) > P.dim:
            raise NotSimple(
                f"point {tuple(map(format_rational, pt))} lies on {len(act)} facets"
            )
    return [Vertex(pt, act) for pt, act in st.points]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures)}


def validate(P: LabeledPolytope) -> ValidationReport:
    """Check boundedness, full dimension, simplicity and irredundancy."""
    failures: list[str] = []
    if P.dim > MAX_DIM:
        return ValidationReport(False, (
            f"dimension {P.dim} exceeds the supported maximum {MAX_DIM} "
            "(facet-subset enumeration is combinatorial)",))

    seen: dict[IntVector, int] = {}
    for i, f in enumerate(P.facets):
        if f.normal in seen:
            failures.append(
                f"facets {seen[f.normal]} and {i} share the normal {list(f.normal)} "
                "(duplicate or parallel facet; one is redundant)")
        else:
            seen[f.normal] = i
    if failures:
        return ValidationReport(False, tuple(failures))

    st = P.structure()
    if not st.points:
        failures.append("no vertex: the region is empty or unbounded without vertices")
        return ValidationReport(False, tuple(failures))
    if not st.simple:
        for pt, act in st.points:
            if len(act) > P.dim:
                failures.append(
                    f"not simple: vertex ({', '.join(map(format_rational, pt))}) "
                    f"lies on facets {sorted(act)}")
    if failures:
        return ValidationReport(False, tuple(failures))
    if not st.bounded:
        for r in st.rays:
            failures.append(f"unbounded along direction {list(r)}")
    if not st.full_dim:
        failures.append(f"not full-dimensional: affine rank {st.affine_rank} < {P.dim}")
    for i in sorted(st.redundant):
        failures.append(f"facet {i} ({list(P.facets[i].normal)} <= "
                        f"{format_rational(P.facets[i].offset)}) is redundant")
    return ValidationReport(not failures, tuple(failures))


def is_regular_level(P: LabeledPolytope, a: Fraction) -> bool:
    a = Fraction(a)
    return all(v.point[0] != a for v in vertices(P))


def irredundant(P: LabeledPolytope) -> LabeledPolytope:
    """Drop redundant facets (exact face-dimension criterion)."""
    st = P.structure()
    if not st.redundant:
        return P
    keep = [f for i, f in enumerate(P.facets) if i not in st.redundant]
    return LabeledPolytope(P.dim, keep)


def canonical_key(P: LabeledPolytope) -> tuple:
    Q = irredundant(P)
    return tuple(sorted(f.key() for f in Q.facets))


def canonical_equal(P: LabeledPolytope, Q: LabeledPolytope) -> bool:
    if P.dim != Q.dim:
        return False
    return canonical_key(P) == canonical_key(Q)


def polytope_hash(P: LabeledPolytope) -> str:
    payload = json.dumps(to_json_dict(P), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()[:12]


# ---------------------------------------------------------------------------
# slicing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Slice:
    """Result of intersecting with {x_1 = s}, in coordinates (x_2 .. x_n).

    polytope is None when the slice is empty or lower-dimensional; the
    degenerate flag distinguishes the two.  inducing[i] is the index of the
    facet of the source polytope that produced facet i of the slice.
    """

    polytope: Optional[LabeledPolytope]
    degenerate: bool
    inducing: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return self.polytope is None


def slice_at(P: LabeledPolytope, s: Fraction) -> Slice:
    if P.dim < 2:
        raise DimensionMismatch("slicing needs dimension >= 2")
    s = Fraction(s)
    st = P.structure()

    candidate_idx = range(len(P.facets))
    if st.simple and st.bounded:
        # a facet can only matter on the slice if s lies in the x1-range
        # of its incident vertices (faces are convex hulls of vertices)
        ranges = {}
        for pt, act in st.points:
            for i in act:
                lo, hi = ranges.get(i, (pt[0], pt[0]))
                ranges[i] = (min(lo, pt[0]), max(hi, pt[0]))
        candidate_idx = [i for i in candidate_idx
                        if i in ranges and ranges[i][0] <= s <= ranges[i][1]]

    pairs: list[tuple[Facet, int]] = []
    seen: dict[tuple, int] = {}
    for i in candidate_idx:
        f = P.facets[i]
        tail = f.normal[1:]
        rhs = Fraction(f.offset) - f.normal[0] * s
        if not any(tail):
            if rhs < 0:
                return Slice(None, False, ())
            continue
        g = content(tail)
        key = (tuple(t // g for t in tail), rhs / g)
        if key in seen:
            continue
        seen[key] = i
        pairs.append((Facet(key[0], key[1], f.label), i))

    if not pairs:
        return Slice(None, False, ())
    # mirror the constructor's canonical order so indices stay aligned
    pairs.sort(key=lambda fi: fi[0].key())
    Q = LabeledPolytope(P.dim - 1, [f for f, _ in pairs])
    qst = Q.structure(bounded_hint=st.bounded)
    if not qst.points:
        return Slice(None, False, ())
    if not qst.full_dim:
        return Slice(None, True, ())
    kept = [pairs[k] for k in range(len(pairs)) if k not in qst.redundant]
    R = LabeledPolytope(P.dim - 1, [f for f, _ in kept])
    return Slice(R, False, tuple(i for _, i in kept))


# ---------------------------------------------------------------------------
# volume by fan triangulation over the face lattice
# ---------------------------------------------------------------------------

def volume(P: LabeledPolytope) -> Fraction:
    """Exact Euclidean volume (lattice normalization of Z^n)."""
    verts = vertices(P)
    st = P.structure()
    if not st.bounded:
        raise PreconditionError("volume of an unbounded region")
    n = P.dim
    if n == 1:
        xs = [v.point[0] for v in verts]
        return max(xs) - min(xs)
    total = Fraction(0)
    apex = min(verts, key=lambda v: v.point)
    for i in range(len(P.facets)):
        if i in st.redundant or i in apex.active:
            continue
        face_pts = [v.point for v in verts if i in v.active]
        if not face_pts:
            continue
        for simplex in _triangulate_face(verts, frozenset([i]), face_pts, n - 1):
            rows = [[q - a for q, a in zip(p, apex.point)] for p in simplex]
            total += abs(_det_fraction(rows))
    return total / math.factorial(n)


def _triangulate_face(verts: list[Vertex], active: frozenset[int],
                      face_pts: list[tuple[Fraction, ...]], k: int):
    """Simplices (lists of k+1 points) triangulating a k-face of a simple polytope."""
    if k == 0:
        yield [face_pts[0]]
        return
    face_set = set(face_pts)
    u0 = min(face_pts)
    u0_active = next(v.active for v in verts if v.point == u0)
    seen_sub: set[frozenset[int]] = set()
    for v in verts:
        if v.point not in face_set:
            continue
        for j in v.active:
            if j in active or j in u0_active:
                continue
            sub_active = active | {j}
            if sub_active in seen_sub:
                continue
            seen_sub.add(sub_active)
            sub_pts = [w.point for w in verts
                       if w.point in face_set and j in w.active]
            for simplex in _triangulate_face(verts, sub_active, sub_pts, k - 1):
                yield [u0] + simplex


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    scaled = []
    mult = Fraction(1)
    for row in rows:
        lcm = 1
        for e in row:
            e = Fraction(e)
            lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
        scaled.append([int(Fraction(e) * lcm) for e in row])
        mult /= lcm
    return det_int(scaled) * mult


# ---------------------------------------------------------------------------
# affine unimodular transforms
# ---------------------------------------------------------------------------

def transform(P: LabeledPolytope, A: Sequence[Sequence[int]],
              b: Sequence[Fraction]) -> LabeledPolytope:
    """Image polytope {Ax + b : x in P} for integer A with |det A| = 1."""
    n = P.dim
    if len(A) != n or any(len(row) != n for row in A) or len(b) != n:
        raise DimensionMismatch("transform shape mismatch")
    try:
        a_inv = inverse_unimodular(A)
    except NotUnimodular:
        raise
    a_inv_t = transpose(a_inv)
    bq = [Fraction(x) for x in b]
    new_facets = []
    for f in P.facets:
        eta = tuple(dot(row, f.normal) for row in a_inv_t)
        g = content(eta)
        eta_p = tuple(x // g for x in eta)
        off = (Fraction(f.offset) + Fraction(dot(eta, bq))) / g
        new_facets.append(Facet(eta_p, off, f.label))
    return LabeledPolytope(n, new_facets)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def to_json_dict(P: LabeledPolytope) -> dict:
    facets = P.facets  # already canonically sorted
    return {
        "dim": P.dim,
        "facets": [
            {"normal": list(f.normal), "offset": format_rational(f.offset), "label": f.label}
            for f in facets
        ],
    }


def dumps(P: LabeledPolytope) -> str:
    return json.dumps(to_json_dict(P), indent=2, sort_keys=True) + "\n"


def from_json_dict(obj: dict) -> LabeledPolytope:
    if not isinstance(obj, dict) or "dim" not in obj or "facets" not in obj:
        raise InputError('polytope file must be {"dim": n, "facets": [...]}')
    dim = obj["dim"]
    if not isinstance(dim, int):
        raise InputError(f'"dim" must be an integer, got {dim!r}')
    facets = []
    for i, fo in enumerate(obj["facets"]):
        normal = fo.get("normal")
        if (not isinstance(normal, list) or not normal
                or not all(isinstance(x, int) for x in normal)):
            raise InputError(f"facet {i}: normal must be a list of integers, got {normal!r}")
        off = fo.get("offset")
        if isinstance(off, float):
            raise InputError(
                f"facet {i}: offset {off!r} is a float; offsets must be exact "
                f'rational strings such as "{format_rational(Fraction(off).limit_denominator(10**6))}"')
        if isinstance(off, int):
            offset = Fraction(off)
        elif isinstance(off, str):
            offset = parse_rational(off)
        else:
            raise InputError(f"facet {i}: offset must be an integer or a rational string")
        label = fo.get("label", 1)
        if not isinstance(label, int) or label < 1:
            raise InputError(f"facet {i}: label must be a positive integer, got {label!r}")
        if not any(normal):
            raise InputError(f"facet {i}: zero normal")
        g = content(normal)
        if g != 1:
            fixed = [x // g for x in normal]
            raise InputError(
                f"facet {i}: normal {normal} is not primitive; use {fixed} "
                f"with offset {format_rational(offset / g)}")
        facets.append(Facet(tuple(normal), offset, label))
    return LabeledPolytope(dim, facets)


def loads(text: str) -> LabeledPolytope:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return from_json_dict(obj)

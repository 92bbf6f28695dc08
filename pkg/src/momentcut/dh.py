"""Exact Duistermaat-Heckman profiles and birational wall-crossing checks.

The density at level s is the Euclidean (n-1)-volume of the slice at s in
the coordinates (x_2 .. x_n); it is a polynomial of degree <= n-1 on each
chamber between consecutive critical levels.  Everything here is decided in
exact rational arithmetic; inequalities on whole intervals go through Sturm
sequences, never sampling floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    InternalError,
    InterpolationMismatch,
    PreconditionError,
    WallNotSimpleCrossing,
)
from .lattice import content, dot, format_rational, solve_exact
from .polytope import (
    Facet,
    LabeledPolytope,
    canonical_equal,
    slice_at,
    to_json_dict,
    vertices,
    volume,
)
from .ops import _pruned, reversed_polytope
from .ratpoly import (
    Poly,
    gap_samples,
    interpolate,
    isolate_roots,
    nonpositive_on,
    one_sided_sign,
)
from .toric import classify_vertex, edge_generators, weights_at_vertex


def critical_values(P: LabeledPolytope) -> list[Fraction]:
    """Distinct first coordinates of the vertices, sorted."""
    return sorted({v.point[0] for v in vertices(P)})


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chamber:
    lo: Fraction
    hi: Fraction
    poly: Poly

    def to_json(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "coefficients": [format_rational(c) for c in self.poly.coeffs],
        }


@dataclass(frozen=True)
class DHProfile:
    walls: tuple[Fraction, ...]
    chambers: tuple[Chamber, ...]

    def value(self, s: Fraction) -> Fraction:
        s = Fraction(s)
        for ch in self.chambers:
            if ch.lo <= s < ch.hi:
                return ch.poly(s)
        last = self.chambers[-1]
        if s == last.hi:
            return last.poly(s)
        raise PreconditionError(f"{format_rational(s)} is outside the moment image")

    def total_integral(self) -> Fraction:
        return sum((ch.poly.integrate(ch.lo, ch.hi) for ch in self.chambers),
                   Fraction(0))

    def mirrored(self) -> "DHProfile":
        chambers = tuple(
            Chamber(-ch.hi, -ch.lo, ch.poly.compose_affine(Fraction(-1), Fraction(0)))
            for ch in reversed(self.chambers))
        return DHProfile(tuple(-w for w in reversed(self.walls)), chambers)

    def to_json(self) -> dict:
        return {
            "walls": [format_rational(w) for w in self.walls],
            "chambers": [ch.to_json() for ch in self.chambers],
        }


def dh_profile(P: LabeledPolytope) -> DHProfile:
    """Interpolate the exact slice volume on every chamber and verify it."""
    if P.dim < 2:
        raise DimensionMismatch("profiles need dimension >= 2")
    walls = critical_values(P)
    n = P.dim
    chambers = []
    for lo, hi in zip(walls, walls[1:]):
        width = hi - lo
        samples = [lo + width * Fraction(k, n + 1) for k in range(1, n + 1)]
        pts = [(s, _slice_volume(P, s)) for s in samples]
        poly = interpolate(pts)
        probe = lo + width * Fraction(1, 2 * (n + 1))
        if poly(probe) != _slice_volume(P, probe):
            raise InterpolationMismatch(
                f"chamber ({format_rational(lo)}, {format_rational(hi)}) "
                "has a hidden wall")
        if not _positive_on_open(poly, lo, hi):
            raise InternalError("chamber density is not positive")
        chambers.append(Chamber(lo, hi, poly))
    return DHProfile(tuple(walls), tuple(chambers))


def _slice_volume(P: LabeledPolytope, s: Fraction) -> Fraction:
    sl = slice_at(P, s)
    if sl.polytope is None:
        return Fraction(0)
    return volume(sl.polytope)


def _positive_on_open(p: Poly, lo: Fraction, hi: Fraction) -> bool:
    ok, _ = nonpositive_on(-p, lo, hi)
    if not ok:
        return False
    return not isolate_roots(p, lo, hi)


# ---------------------------------------------------------------------------
# log-concavity and local minima
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChamberVerdict:
    lo: Fraction
    hi: Fraction
    ok: bool
    witness: Optional[Fraction]


@dataclass(frozen=True)
class WallVerdict:
    wall: Fraction
    ok: bool
    continuous: bool
    left_slope_num: Fraction
    right_slope_num: Fraction


@dataclass(frozen=True)
class LogConcavityReport:
    ok: bool
    chambers: tuple[ChamberVerdict, ...]
    walls: tuple[WallVerdict, ...]
    first_violation: Optional[str]

    def to_json(self) -> dict:
        return {
            "log_concave": self.ok,
            "chambers": [
                {"lo": format_rational(c.lo), "hi": format_rational(c.hi), "ok": c.ok,
                 "witness": None if c.witness is None else format_rational(c.witness)}
                for c in self.chambers
            ],
            "walls": [
                {"wall": format_rational(w.wall), "ok": w.ok, "continuous": w.continuous}
                for w in self.walls
            ],
            "first_violation": self.first_violation,
        }


def check_log_concavity(profile: DHProfile) -> LogConcavityReport:
    """Exact verdict: mu * mu'' - (mu')^2 <= 0 per chamber, and one-sided
    logarithmic slopes non-increasing across interior walls."""
    chamber_verdicts = []
    first = None
    for ch in profile.chambers:
        p = ch.poly
        g = p * p.derivative().derivative() - p.derivative() * p.derivative()
        ok, witness = nonpositive_on(g, ch.lo, ch.hi)
        chamber_verdicts.append(ChamberVerdict(ch.lo, ch.hi, ok, witness))
        if not ok and first is None:
            first = (f"chamber ({format_rational(ch.lo)}, {format_rational(ch.hi)}): "
                     f"mu*mu'' - mu'^2 > 0 at s = {format_rational(witness)}")
    wall_verdicts = []
    for left, right in zip(profile.chambers, profile.chambers[1:]):
        a = left.hi
        vl, vr = left.poly(a), right.poly(a)
        continuous = vl == vr
        if vl <= 0 or vr <= 0:
            ok = False
            lhs = rhs = Fraction(0)
        else:
            # (mu'/mu)(a-) >= (mu'/mu)(a+), cross-multiplied
            lhs = left.poly.derivative()(a) * vr
            rhs = right.poly.derivative()(a) * vl
            ok = lhs >= rhs
        wall_verdicts.append(WallVerdict(a, ok, continuous, lhs, rhs))
        if not ok and first is None:
            first = (f"wall {format_rational(a)}: one-sided log-derivative "
                     "increases across the wall")
    all_ok = all(c.ok for c in chamber_verdicts) and all(w.ok for w in wall_verdicts)
    return LogConcavityReport(all_ok, tuple(chamber_verdicts), tuple(wall_verdicts), first)


@dataclass(frozen=True)
class LocalMinimum:
    kind: str                      # "wall" or "chamber"
    location: Optional[Fraction]   # exact point when known
    lo: Fraction
    hi: Fraction

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "location": None if self.location is None else format_rational(self.location),
            "isolating_interval": [format_rational(self.lo), format_rational(self.hi)],
        }


def find_strict_local_minima(profile: DHProfile) -> list[LocalMinimum]:
    """Interior points where the density has a strict local minimum."""
    minima: list[LocalMinimum] = []
    for ch in profile.chambers:
        d = ch.poly.derivative()
        markers = isolate_roots(d, ch.lo, ch.hi)
        if not markers:
            continue
        samples = gap_samples(markers, ch.lo, ch.hi)
        for i, m in enumerate(markers):
            before = d(samples[i])
            after = d(samples[i + 1])
            if before < 0 and after > 0:
                minima.append(LocalMinimum("chamber", m.exact, m.lo, m.hi))
    for left, right in zip(profile.chambers, profile.chambers[1:]):
        a = left.hi
        vl, vr = left.poly(a), right.poly(a)
        v = min(vl, vr)
        left_up = (vl > v) or one_sided_sign(left.poly - Poly([v]), a, -1) > 0
        right_up = (vr > v) or one_sided_sign(right.poly - Poly([v]), a, +1) > 0
        if left_up and right_up:
            minima.append(LocalMinimum("wall", a, a, a))
    minima.sort(key=lambda m: (m.lo, m.hi))
    return minima


# ---------------------------------------------------------------------------
# chamber stability
# ---------------------------------------------------------------------------

def chamber_affine_check(P: LabeledPolytope, interval: tuple[Fraction, Fraction]) -> bool:
    """Constant facet set and affine offset laws across a chamber.

    Verified at three exact samples: the inducing facet sets must agree, the
    vertex active-set combinatorics must agree, and each induced offset must
    fit one affine law in s.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo >= hi:
        raise PreconditionError("empty interval")
    for c in critical_values(P):
        if lo < c < hi:
            raise PreconditionError(
                f"critical value {format_rational(c)} inside the interval")
    samples = [lo + (hi - lo) * Fraction(k, 4) for k in (1, 2, 3)]
    slices = [slice_at(P, s) for s in samples]
    if any(sl.polytope is None for sl in slices):
        raise PreconditionError("interval leaves the moment image")
    inducing_sets = [tuple(sorted(sl.inducing)) for sl in slices]
    if not inducing_sets[0] == inducing_sets[1] == inducing_sets[2]:
        return False
    types = []
    for sl in slices:
        vs = vertices(sl.polytope)
        types.append(sorted(
            tuple(sorted(sl.inducing[i] for i in v.active)) for v in vs))
    if not types[0] == types[1] == types[2]:
        return False
    # offsets: two samples fix an affine law; the third must obey it
    for idx in range(len(inducing_sets[0])):
        offs = []
        for sl, s in zip(slices, samples):
            pos = list(sl.inducing).index(inducing_sets[0][idx])
            offs.append(Fraction(sl.polytope.facets[pos].offset))
        s1, s2, s3 = samples
        if (offs[1] - offs[0]) * (s3 - s2) != (offs[2] - offs[1]) * (s2 - s1):
            return False
    return True


# ---------------------------------------------------------------------------
# wall crossing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingVertex:
    point: tuple[Fraction, ...]
    weights: tuple[int, ...]
    vertex_class: object
    multiplicity: int              # |negative weight|: 1 smooth, 2 for Z2
    exceptional_normal: tuple[int, ...]
    exceptional_slope: Fraction
    coefficient: str               # "2*pi*(s - a)" or "pi*(s - a)"
    image_vertex_ok: bool
    depth_law_ok: bool

    def to_json(self) -> dict:
        return {
            "point": [format_rational(c) for c in self.point],
            "weights": list(self.weights),
            "class": self.vertex_class.to_json(),
            "multiplicity": self.multiplicity,
            "exceptional_normal": list(self.exceptional_normal),
            "exceptional_offset_slope": format_rational(self.exceptional_slope),
            "class_coefficient": self.coefficient,
            "image_vertex_ok": self.image_vertex_ok,
            "depth_law_ok": self.depth_law_ok,
        }


@dataclass(frozen=True)
class WallReport:
    wall: Fraction
    window: Fraction
    vertices: tuple[CrossingVertex, ...]
    match_samples: tuple[tuple[Fraction, bool], ...]
    match: bool
    below_slopes: tuple[tuple[int, tuple[int, ...], Fraction], ...]
    above_slopes: tuple[tuple[tuple[int, ...], Fraction], ...]
    reversed_summary: Optional[dict]

    @property
    def ok(self) -> bool:
        return self.match and all(v.image_vertex_ok and v.depth_law_ok
                                  for v in self.vertices)

    def to_json(self) -> dict:
        return {
            "wall": format_rational(self.wall),
            "window": format_rational(self.window),
            "fixed_vertices": [v.to_json() for v in self.vertices],
            "blowup_match": {
                "samples": [
                    {"s": format_rational(s), "equal": eq} for s, eq in self.match_samples
                ],
                "verdict": self.match,
            },
            "euler_slopes": {
                "below": [
                    {"inducing_facet": i, "normal": list(nrm), "slope": format_rational(sl)}
                    for i, nrm, sl in self.below_slopes
                ],
                "above": [
                    {"normal": list(nrm), "slope": format_rational(sl)}
                    for nrm, sl in self.above_slopes
                ],
            },
            "reversed": self.reversed_summary,
            "ok": self.ok,
        }


def wall_crossing_check(P: LabeledPolytope, a: Fraction,
                        window: Optional[Fraction] = None,
                        include_reversed: bool = True) -> WallReport:
    """Verify that crossing the wall upward blows up the reduced space.

    The reduced polytopes just above the wall must equal the continuation of
    the polytopes from below, chopped at the image of each fixed vertex with
    depth (s - a).  A fixed vertex with weights (-1, 1, ..) contributes an
    exceptional class with coefficient 2*pi*(s-a); weights (-2, 1, ..) give
    the half coefficient pi*(s-a).
    """
    a = Fraction(a)
    crit = critical_values(P)
    if a not in crit:
        raise WallNotSimpleCrossing(f"no vertex at level {format_rational(a)}")
    gaps = [abs(c - a) for c in crit if c != a]
    if window is None:
        if not gaps:
            raise WallNotSimpleCrossing("single-wall moment image")
        window = min(gaps) / 2
    else:
        window = Fraction(window)
        if window <= 0:
            raise PreconditionError("window must be positive")
        if any(g < window for g in gaps):
            raise PreconditionError("another critical value inside the window")

    wall_verts = [v for v in vertices(P) if v.point[0] == a]

    # the facet set active on slices below the wall
    below_samples = [a - window / 2, a - window / 4]
    below_slices = [slice_at(P, s) for s in below_samples]
    if any(sl.polytope is None for sl in below_slices):
        raise WallNotSimpleCrossing("no reduced space below the wall")
    if sorted(below_slices[0].inducing) != sorted(below_slices[1].inducing):
        raise InternalError("facet set changed below the wall without a critical value")
    below_inducing = sorted(below_slices[0].inducing)

    # classify every fixed vertex at the wall
    crossing_data = []
    n = P.dim
    for v in wall_verts:
        act = sorted(v.active)
        gens = edge_generators(P, v)
        pair = [dot((1,) + (0,) * (n - 1), e) for e in gens]
        negs = [k for k, w in enumerate(pair) if w < 0]
        if len(negs) != 1 or any(w == 0 for w in pair):
            raise WallNotSimpleCrossing(
                f"vertex ({', '.join(map(format_rational, v.point))}) has weights "
                f"{sorted(pair)}; need exactly one negative weight and no zero")
        m = -pair[negs[0]]
        if m not in (1, 2):
            raise WallNotSimpleCrossing(
                f"negative weight -{m} is not supported (only -1 and -2)")
        j = act[negs[0]]
        others = [i for i in act if i != j]
        raw_tail = tuple(sum(P.facets[i].normal[k] for i in others)
                         for k in range(1, n))
        if m == 2 and any(x % 2 for x in raw_tail):
            raise WallNotSimpleCrossing(
                "weight -2 vertex fails the Z2 condition: the sum of the "
                "continued normals is not divisible by 2")
        if j in below_inducing or not set(others) <= set(below_inducing):
            raise WallNotSimpleCrossing(
                "the negative-weight facet is active below the wall")
        crossing_data.append((v, tuple(sorted(pair)), m, j, others, raw_tail))

    # verification samples above the wall
    above_samples = [a + window / 4, a + window / 2]
    extra_sample = a + window * Fraction(3, 8)
    match_samples = []
    image_ok = {id(v): True for v, *_ in crossing_data}
    depth_ok = {id(v): True for v, *_ in crossing_data}
    for s in above_samples:
        actual = slice_at(P, s).polytope
        if actual is None:
            raise WallNotSimpleCrossing("no reduced space above the wall")
        continued = _continued_facets(P, below_inducing, s)
        chops = []
        for v, _, m, j, others, raw_tail in crossing_data:
            w_img = _continued_corner(P, others, s)
            if w_img is None or not _satisfies_all(continued, w_img):
                image_ok[id(v)] = False
                continue
            rhs = sum(Fraction(P.facets[i].offset) - P.facets[i].normal[0] * s
                      for i in others) - (s - a)
            g = content(raw_tail)
            chop = Facet(tuple(x // g for x in raw_tail), Fraction(rhs, 1) / g, 1)
            chops.append(chop)
            # depth law measured on the actual slice
            found = [f for f in actual.facets if f.normal == chop.normal]
            if len(found) != 1:
                depth_ok[id(v)] = False
            else:
                measured = sum(dot(P.facets[i].normal[1:], w_img)
                               for i in others) - g * Fraction(found[0].offset)
                if measured != s - a:
                    depth_ok[id(v)] = False
        candidate = _pruned(P.dim - 1, continued + chops, bounded_hint=True)
        match_samples.append((s, canonical_equal(candidate, actual)))

    # Euler data: offset slopes per facet in each adjacent chamber
    below_slopes = []
    for i in below_inducing:
        f = P.facets[i]
        g = content(f.normal[1:])
        below_slopes.append((i, tuple(x // g for x in f.normal[1:]),
                             Fraction(-f.normal[0], g)))
    above_slopes = _measured_slopes(P, above_samples, extra_sample)

    # Crossing the wall downward is the mirror image of crossing it upward:
    # the reversed polytope satisfies slice_rev(-s) = slice(s) exactly, its
    # wall vertices carry the negated weights, and the exceptional class
    # coefficients flip sign.  Verify the mirror identity and the weights.
    reversed_summary = None
    if include_reversed:
        rev = reversed_polytope(P)
        rev_weights = sorted(
            weights_at_vertex(rev, v) for v in vertices(rev) if v.point[0] == -a)
        expect = sorted(tuple(sorted(-w for w in ws))
                        for _, ws, *_ in crossing_data)
        mirror_ok = all(
            canonical_equal(slice_at(rev, -s).polytope, slice_at(P, s).polytope)
            for s in above_samples + below_samples)
        reversed_summary = {
            "wall": format_rational(-a),
            "weights": [list(w) for w in rev_weights],
            "weights_negated_ok": rev_weights == expect,
            "mirror_slices_ok": mirror_ok,
            "coefficient_sign": "flipped",
            "ok": rev_weights == expect and mirror_ok,
        }

    out_vertices = []
    for v, weights, m, j, others, raw_tail in crossing_data:
        g = content(raw_tail)
        slope = Fraction(-(sum(P.facets[i].normal[0] for i in others) + 1), g)
        coeff = f"2*pi*(s - {format_rational(a)})" if m == 1 else \
            f"pi*(s - {format_rational(a)})"
        out_vertices.append(CrossingVertex(
            point=v.point,
            weights=weights,
            vertex_class=classify_vertex(P, v),
            multiplicity=m,
            exceptional_normal=tuple(x // g for x in raw_tail),
            exceptional_slope=slope,
            coefficient=coeff,
            image_vertex_ok=image_ok[id(v)],
            depth_law_ok=depth_ok[id(v)],
        ))
    return WallReport(
        wall=a,
        window=window,
        vertices=tuple(out_vertices),
        match_samples=tuple(match_samples),
        match=all(eq for _, eq in match_samples),
        below_slopes=tuple(below_slopes),
        above_slopes=above_slopes,
        reversed_summary=reversed_summary,
    )


def _continued_facets(P: LabeledPolytope, inducing: Sequence[int],
                      s: Fraction) -> list[Facet]:
    out = []
    for i in inducing:
        f = P.facets[i]
        tail = f.normal[1:]
        g = content(tail)
        out.append(Facet(tuple(x // g for x in tail),
                         (Fraction(f.offset) - f.normal[0] * s) / g, f.label))
    return out


def _continued_corner(P: LabeledPolytope, others: Sequence[int],
                      s: Fraction) -> Optional[tuple[Fraction, ...]]:
    rows = [list(P.facets[i].normal[1:]) for i in others]
    rhs = [Fraction(P.facets[i].offset) - P.facets[i].normal[0] * s for i in others]
    return solve_exact(rows, rhs)


def _satisfies_all(facets: Sequence[Facet], point: Sequence[Fraction]) -> bool:
    return all(dot(f.normal, point) <= f.offset for f in facets)


def _measured_slopes(P: LabeledPolytope, samples: Sequence[Fraction],
                     probe: Fraction):
    s1, s2 = samples
    sl1, sl2 = slice_at(P, s1).polytope, slice_at(P, s2).polytope
    sl3 = slice_at(P, probe).polytope
    offs1 = {f.normal: Fraction(f.offset) for f in sl1.facets}
    offs2 = {f.normal: Fraction(f.offset) for f in sl2.facets}
    offs3 = {f.normal: Fraction(f.offset) for f in sl3.facets}
    if set(offs1) != set(offs2) or set(offs1) != set(offs3):
        raise InternalError("facet set changed above the wall without a critical value")
    out = []
    for nrm in sorted(offs1):
        slope = (offs2[nrm] - offs1[nrm]) / (s2 - s1)
        if offs3[nrm] != offs1[nrm] + slope * (probe - s1):
            raise InternalError("offset law above the wall is not affine")
        out.append((nrm, slope))
    return tuple(out)

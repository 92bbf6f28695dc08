"""Acceptance suite: one test per release criterion, one printed line each.

Everything on the exact side is compared with == at zero tolerance; the
floating-point batteries carry their stated tolerances and seeds.  Run with
`pytest tests/test_acceptance.py -v -s` to see the line per criterion.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from momentcut.batteries import (
    blowup_potential_battery,
    cut_identity_battery,
    monotone_battery,
    npm_scaling_battery,
    psh_battery,
    solve_membership_battery,
)
from momentcut.corpus import asymmetric_wedge, chopped_hypercube, delta3, delzant_corpus
from momentcut.dh import (
    Chamber,
    DHProfile,
    check_log_concavity,
    dh_profile,
    find_strict_local_minima,
    wall_crossing_check,
)
from momentcut.ops import BlowupParams, add_fixed_points, blowup, cut
from momentcut.polytope import canonical_equal, slice_at, vertices, volume
from momentcut.ratpoly import Poly

from conftest import regular_levels

F = Fraction


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_add_fixed_points_pipeline():
    start = time.perf_counter()
    P = asymmetric_wedge()
    Q, ledger, report = add_fixed_points(P, F(1, 4))
    elapsed = time.perf_counter() - start
    at_zero = sorted(p for p, _ in report.new_fixed_vertices)
    ok = (report.agreement_below
          and at_zero == [(F(0), F(-1, 2)), (F(0), F(1, 2))]
          and all(w == (-2, 1) for _, w in report.new_fixed_vertices)
          and elapsed < 1.0)
    _report(1, ok, f"pipeline: 2 fixed vertices at x1=0 with weights (-2,1), "
                   f"agreement on the lower half exact, {elapsed:.3f}s")


def test_criterion_2_smooth_wall_crossing():
    start = time.perf_counter()
    rep = wall_crossing_check(delta3(), F(0), F(1, 2))
    elapsed = time.perf_counter() - start
    v = rep.vertices[0]
    ok = (rep.ok and len(rep.vertices) == 1
          and v.weights == (-1, 1, 1)
          and [F(s) for s, eq in rep.match_samples] == [F(1, 8), F(1, 4)]
          and all(eq for _, eq in rep.match_samples)
          and v.coefficient == "2*pi*(s - 0)"
          and elapsed < 1.0)
    _report(2, ok, f"slice(s) = blowup(continued, depth s) at s=1/8, 1/4 exact, "
                   f"coefficient 2*pi*s, {elapsed:.3f}s")


def test_criterion_3_z2_wall_crossing():
    Q, _, _ = add_fixed_points(asymmetric_wedge(), F(1, 4))
    rep = wall_crossing_check(Q, F(0))
    ok = (rep.ok and len(rep.vertices) == 2
          and all(v.weights == (-2, 1) and v.multiplicity == 2
                  and v.depth_law_ok and v.coefficient == "pi*(s - 0)"
                  for v in rep.vertices))
    _report(3, ok, "Z2 crossing: depth law exact at both samples, coefficient pi*s")


def test_criterion_4_dh_engine():
    start = time.perf_counter()
    P = delta3()
    prof = dh_profile(P)
    left, right = prof.chambers
    rng = random.Random(123)
    oracle_ok = True
    checked = 0
    while checked < 100:
        s = F(rng.randint(-127, 127), 128)
        if s in prof.walls or not prof.walls[0] < s < prof.walls[-1]:
            continue
        checked += 1
        sl = slice_at(P, s)
        if prof.value(s) != (volume(sl.polytope) if sl.polytope else F(0)):
            oracle_ok = False
    elapsed = time.perf_counter() - start
    ok = (left.poly.degree <= 2 and right.poly.degree <= 2
          and left.poly(F(0)) == right.poly(F(0))
          and prof.total_integral() == F(1, 6) == volume(P)
          and oracle_ok and elapsed < 5.0)
    _report(4, ok, f"degree <= 2 on both chambers, continuous at 0, integral "
                   f"exactly 1/6, 100-sample oracle exact, {elapsed:.3f}s")


def test_criterion_5_log_concavity_corpus():
    corpus = [(name, P) for name, P in delzant_corpus() if P.dim >= 2]
    assert len(corpus) >= 10
    all_ok = True
    for name, P in corpus:
        prof = dh_profile(P)
        if not check_log_concavity(prof).ok or find_strict_local_minima(prof):
            all_ok = False
    vee = DHProfile((F(-1), F(0), F(1)), (
        Chamber(F(-1), F(0), Poly([F(1), F(-1)])),
        Chamber(F(0), F(1), Poly([F(1), F(1)]))))
    minima = find_strict_local_minima(vee)
    flagged = (len(minima) == 1 and minima[0].location == 0
               and not check_log_concavity(vee).ok)
    _report(5, all_ok and flagged,
            f"{len(corpus)} polytopes log-concave with no strict minima; "
            "the glued 1-s / 1+s profile is flagged at 0")


def test_criterion_6_cut_compatibility():
    rng = random.Random(20240811)
    failures = []
    pairs = 0
    for name, P in delzant_corpus():
        if P.dim < 2:
            continue
        for a in regular_levels(P, rng, 5):
            C = cut(P, a)
            for s in regular_levels(P, rng, 5, hi=a):
                pairs += 1
                if not canonical_equal(slice_at(C, s).polytope,
                                       slice_at(P, s).polytope):
                    failures.append((name, a, s))
    _report(6, not failures,
            f"slice(cut(P,a), s) == slice(P, s) exactly on {pairs} pairs")


def test_criterion_7_ledger_multipliers():
    square = delzant_corpus()[0][1]
    _, smooth_ledger = blowup(square, BlowupParams((F(0), F(0)), F(1, 4)))
    C = cut(asymmetric_wedge(), F(1, 4))
    _, z2_ledger = blowup(C, BlowupParams((F(1, 4), F(5, 8)), F(1, 4)))
    ok = (smooth_ledger.terms[0].multiplier == F(1)
          and not smooth_ledger.terms[0].z2
          and z2_ledger.terms[0].multiplier == F(1, 2)
          and z2_ledger.terms[0].z2)
    _report(7, ok, "smooth blow-up records multiplier 1, Z2 records 1/2")


def test_criterion_8_local_model_battery():
    start = time.perf_counter()
    reports = [
        monotone_battery(trials=1000, seed=2024),
        solve_membership_battery(trials=1000, seed=2024),
        npm_scaling_battery(trials=1000, seed=2024),
        psh_battery(trials=1000, seed=2024),
        cut_identity_battery(trials=1000, seed=2024),
        blowup_potential_battery(trials=1000, seed=2024),
    ]
    elapsed = time.perf_counter() - start
    ok = all(r.ok for r in reports) and elapsed < 30.0
    detail = "; ".join(f"{r.name} worst={r.worst_residual:.1e} (tol {r.tolerance:g})"
                       for r in reports)
    _report(8, ok, f"{detail}; total {elapsed:.1f}s")


def test_criterion_9_performance():
    P = chopped_hypercube()
    t0 = time.perf_counter()
    vs = vertices(P)
    t_vertices = time.perf_counter() - t0
    t0 = time.perf_counter()
    C = cut(P, F(1, 2))
    Q, _ = blowup(P, BlowupParams(vs[0].point, F(1, 16)))
    vol = volume(P)
    eq = canonical_equal(P, P)
    t_ops = time.perf_counter() - t0
    t0 = time.perf_counter()
    prof = dh_profile(P)
    t_dh = time.perf_counter() - t0
    ok = (t_vertices < 1.0 and t_ops < 1.0 and t_dh < 5.0
          and len(vs) == 64 and vol == F(383, 384)
          and prof.total_integral() == vol and eq)
    _report(9, ok, f"n=4, 24 facets: vertices {t_vertices:.2f}s, "
                   f"cut+blowup+volume+equality {t_ops:.2f}s, dh {t_dh:.2f}s")

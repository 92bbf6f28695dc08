"""Floating-point verifier for linear circle actions on C^n.

The model is C^n with the standard symplectic form, the standard complex
structure, and the action lambda . z = (lambda^{a_1} z_1, ..); the moment
map is psi(z) = 1/2 sum a_j |z_j|^2.  Each function here checks one of the
analytic identities of that model numerically: monotonicity of psi along
the real flow e^t, the time-to-level solver, the weighted radii N-/N+ and
orbital convexity of the model neighborhoods, the plurisubharmonicity
eigenvalue identity, the cut tameness fraction, and the blow-up potential
contraction.  Finite differences carry Richardson step-halving checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import FixedPointInput, PreconditionError, StepTooLarge

EXP_LIMIT = 700.0  # log of the largest safe double


@dataclass(frozen=True)
class LinearAction:
    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.weights:
            raise PreconditionError("need at least one weight")
        object.__setattr__(self, "weights", tuple(int(a) for a in self.weights))

    @property
    def neg(self) -> tuple[int, ...]:
        return tuple(j for j, a in enumerate(self.weights) if a < 0)

    @property
    def pos(self) -> tuple[int, ...]:
        return tuple(j for j, a in enumerate(self.weights) if a > 0)

    @property
    def zero(self) -> tuple[int, ...]:
        return tuple(j for j, a in enumerate(self.weights) if a == 0)

    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def is_fixed(self, z: np.ndarray) -> bool:
        z = np.asarray(z, dtype=complex)
        return bool(np.all(np.abs(z[self.array() != 0]) == 0.0))


def parse_weights(text: str) -> LinearAction:
    return LinearAction(tuple(int(p) for p in text.split(",")))


def flow(action: LinearAction, z: Sequence[complex], t: float) -> np.ndarray:
    """(e^{a_j t} z_j)_j, with an explicit overflow guard."""
    z = np.asarray(z, dtype=complex)
    a = action.array()
    with np.errstate(divide="ignore"):
        logs = a * t + np.log(np.where(np.abs(z) > 0, np.abs(z), 1.0))
    if np.any(logs[np.abs(z) > 0] > EXP_LIMIT):
        raise PreconditionError(f"flow to t={t} overflows double precision")
    return z * np.exp(a * t)


def moment_standard(action: LinearAction, z: Sequence[complex]) -> float:
    z = np.asarray(z, dtype=complex)
    return float(0.5 * np.sum(action.array() * np.abs(z) ** 2))


# ---------------------------------------------------------------------------
# monotone flow
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneReport:
    strictly_increasing: bool
    derivative_rel_err: float
    grid_points: int

    @property
    def ok(self) -> bool:
        return self.strictly_increasing and self.derivative_rel_err <= 1e-6


def check_monotone(action: LinearAction, z: Sequence[complex],
                   t_grid: Optional[np.ndarray] = None) -> MonotoneReport:
    """psi(e^t z) strictly increasing; d/dt psi = sum a_j^2 |z_j e^{a_j t}|^2."""
    z = np.asarray(z, dtype=complex)
    if action.is_fixed(z):
        raise FixedPointInput("the point is fixed by the action")
    if t_grid is None:
        t_grid = np.linspace(-3.0, 3.0, 1001)
    a = action.array()
    vals = 0.5 * ((np.abs(z[None, :]) ** 2 * np.exp(2.0 * np.outer(t_grid, a))) * a).sum(axis=1)
    increasing = bool(np.all(np.diff(vals) > 0))
    worst = 0.0
    probes = t_grid[:: max(1, len(t_grid) // 12)]
    h = 1e-5
    for t in probes:
        zt = flow(action, z, t)
        formula = float(np.sum(a**2 * np.abs(zt) ** 2))
        d1 = (moment_standard(action, flow(action, z, t + h))
              - moment_standard(action, flow(action, z, t - h))) / (2 * h)
        d2 = (moment_standard(action, flow(action, z, t + h / 2))
              - moment_standard(action, flow(action, z, t - h / 2))) / h
        deriv = (4 * d2 - d1) / 3
        worst = max(worst, abs(deriv - formula) / max(abs(formula), 1e-300))
    return MonotoneReport(increasing, worst, len(t_grid))


# ---------------------------------------------------------------------------
# the time-to-level solver and level membership
# ---------------------------------------------------------------------------

def moment_range(action: LinearAction, z: Sequence[complex]) -> tuple[float, float]:
    """Open range of psi along the real flow through z (limits, not attained)."""
    z = np.asarray(z, dtype=complex)
    if action.is_fixed(z):
        raise FixedPointInput("the point is fixed by the action")
    has_neg = any(abs(z[j]) > 0 for j in action.neg)
    has_pos = any(abs(z[j]) > 0 for j in action.pos)
    lo = -math.inf if has_neg else 0.0
    hi = math.inf if has_pos else 0.0
    return lo, hi


def solve_time_to_level(action: LinearAction, z: Sequence[complex], s: float,
                        tol: float = 1e-12, bracket0: float = 1.0) -> Optional[float]:
    """The unique t with psi(e^t z) = s, or None when s is not attained.

    Bracketing plus bisection; monotonicity makes the root unique, so the
    answer does not depend on the initial bracket.
    """
    z = np.asarray(z, dtype=complex)
    lo_lim, hi_lim = moment_range(action, z)
    if not lo_lim < s < hi_lim:
        return None
    a_max = max(abs(a) for a in action.weights if a != 0)
    t_cap = EXP_LIMIT / (2 * a_max)

    def psi(t: float) -> float:
        return moment_standard(action, flow(action, z, t))

    t_lo, t_hi = -bracket0, bracket0
    while psi(t_hi) <= s:
        t_hi *= 2
        if t_hi > t_cap:
            return None
    while psi(t_lo) >= s:
        t_lo *= 2
        if t_lo < -t_cap:
            return None
    for _ in range(300):
        mid = 0.5 * (t_lo + t_hi)
        v = psi(mid)
        if abs(v - s) <= tol:
            return mid
        if v < s:
            t_lo = mid
        else:
            t_hi = mid
        if t_hi - t_lo < 1e-16 * max(1.0, abs(t_lo)):
            break
    return 0.5 * (t_lo + t_hi)


def level_membership(action: LinearAction, z: Sequence[complex], s: float) -> bool:
    """Block predicate for s in psi(C^x . z).

    s > 0 needs the positive-weight block of z to be non-zero, s < 0 the
    negative block, and s = 0 both.
    """
    z = np.asarray(z, dtype=complex)
    if action.is_fixed(z):
        raise FixedPointInput("the point is fixed by the action")
    has_neg = any(abs(z[j]) > 0 for j in action.neg)
    has_pos = any(abs(z[j]) > 0 for j in action.pos)
    if s > 0:
        return has_pos
    if s < 0:
        return has_neg
    return has_neg and has_pos


# ---------------------------------------------------------------------------
# weighted radii and orbital convexity
# ---------------------------------------------------------------------------

def n_pm(action: LinearAction, z: Sequence[complex]) -> tuple[float, float]:
    """N_-(z) and N_+(z): (sum |z_j|^{2/|a_j|})^{1/2} over the sign blocks."""
    z = np.asarray(z, dtype=complex)
    out = []
    for block in (action.neg, action.pos):
        if not block:
            out.append(0.0)
            continue
        total = sum(abs(z[j]) ** (2.0 / abs(action.weights[j])) for j in block)
        out.append(math.sqrt(total))
    return out[0], out[1]


@dataclass(frozen=True)
class NeighborhoodSpec:
    eps: float
    eps_prime: float
    delta: float
    compact_bound: float = 1.0

    def __post_init__(self):
        if not (0 < self.eps_prime < self.eps):
            raise PreconditionError("need 0 < eps_prime < eps")
        if self.delta <= 0:
            raise PreconditionError("delta must be positive")


def default_spec(action: LinearAction, eps: float = 0.5,
                 eps_prime: float = 0.25) -> NeighborhoodSpec:
    """A provably valid delta for the model neighborhood.

    On the sphere N_+ = eps the positive moment part is at least
    (1/2) k^{1-amax} eps^{2 amax}; on the disc N_- < eps' the negative part
    is at most (1/2) amax' eps'^{2 amin'}.  delta takes 90% of the slack,
    using the worse of the two exit directions.
    """
    if eps >= 1:
        raise PreconditionError("eps must be < 1 for the model bounds")
    sides = []
    for sphere_block, disc_block in ((action.pos, action.neg),
                                     (action.neg, action.pos)):
        if not sphere_block:
            continue
        a_sphere = [abs(action.weights[j]) for j in sphere_block]
        lower = 0.5 * len(a_sphere) ** (1 - max(a_sphere)) * eps ** (2 * max(a_sphere))
        if disc_block:
            a_disc = [abs(action.weights[j]) for j in disc_block]
            upper = 0.5 * max(a_disc) * (eps_prime**2) ** min(a_disc)
        else:
            upper = 0.0
        sides.append(lower - upper)
    if not sides:
        raise PreconditionError("the action has no nonzero weight")
    delta = 0.9 * min(sides)
    if delta <= 0:
        raise PreconditionError(
            "no valid delta for these radii; decrease eps_prime")
    return NeighborhoodSpec(eps, eps_prime, delta)


def _sample_block(rng: np.random.Generator, k: int, weights: Sequence[int],
                  radius: float) -> np.ndarray:
    """Random point of the open ball N < radius in a sign block."""
    while True:
        u = rng.uniform(0.0, radius**2, size=k)
        if u.sum() < radius**2:
            mags = u ** (np.abs(np.asarray(weights, dtype=float)) / 2.0)
            phases = np.exp(2j * np.pi * rng.uniform(size=k))
            return mags * phases


def sample_neighborhood(action: LinearAction, spec: NeighborhoodSpec,
                        rng: np.random.Generator) -> np.ndarray:
    """Random point of the model neighborhood V."""
    n = len(action.weights)
    for _ in range(10_000):
        z = np.zeros(n, dtype=complex)
        if action.neg:
            z[list(action.neg)] = _sample_block(
                rng, len(action.neg), [action.weights[j] for j in action.neg], spec.eps)
        if action.pos:
            z[list(action.pos)] = _sample_block(
                rng, len(action.pos), [action.weights[j] for j in action.pos], spec.eps)
        if action.zero:
            w = rng.normal(size=len(action.zero)) + 1j * rng.normal(size=len(action.zero))
            norm = np.linalg.norm(w)
            scale = rng.uniform() ** (1.0 / (2 * len(action.zero)))
            z[list(action.zero)] = (w / max(norm, 1e-300)) * spec.compact_bound * scale
        nm, np_ = n_pm(action, z)
        if nm * np_ < spec.eps * spec.eps_prime:
            return z
    raise PreconditionError("rejection sampling failed; radii too tight")


def membership_v(action: LinearAction, spec: NeighborhoodSpec,
                 z: np.ndarray) -> bool:
    nm, np_ = n_pm(action, z)
    w_norm = (np.linalg.norm(np.asarray(z)[list(action.zero)])
              if action.zero else 0.0)
    return (nm < spec.eps and np_ < spec.eps
            and w_norm <= spec.compact_bound
            and nm * np_ < spec.eps * spec.eps_prime)


@dataclass(frozen=True)
class ConvexityReport:
    trials: int
    reentries: int
    exit_clause_failures: int
    half_line_cases: int
    t_span: float
    grid_points: int

    @property
    def ok(self) -> bool:
        return self.reentries == 0 and self.exit_clause_failures == 0


def orbital_convexity_probe(action: LinearAction, spec: NeighborhoodSpec,
                            trials: int = 1000, seed: int = 0,
                            region: Optional[Callable[[np.ndarray], bool]] = None,
                            sampler: Optional[Callable[[np.random.Generator], np.ndarray]] = None,
                            t_span: float = 8.0,
                            grid_points: int = 2001) -> ConvexityReport:
    """Scan flow lines through random points of V on a fine t-grid.

    Fails a trial when the occupancy set {t : e^t z in V} is not a single
    run of grid points (re-entry), or when a finite-time exit happens
    without a visited moment value beyond +-delta.  A falsifier by
    sampling: the grid resolution and span are disclosed in the report.
    """
    rng = np.random.default_rng(seed)
    inside = region if region is not None else (lambda z: membership_v(action, spec, z))
    draw = sampler if sampler is not None else (
        lambda r: sample_neighborhood(action, spec, r))
    grid = np.linspace(-t_span, t_span, grid_points)
    a = action.array()
    factors = np.exp(np.outer(grid, a))          # (grid, n), moderate exponents
    reentries = 0
    clause_failures = 0
    half_lines = 0
    for _ in range(trials):
        z = draw(rng)
        zt_all = factors * z[None, :]
        psis = 0.5 * (np.abs(zt_all) ** 2 * a).sum(axis=1)
        flags = np.fromiter((inside(zt) for zt in zt_all), dtype=bool,
                            count=grid_points)
        idx = np.nonzero(flags)[0]
        if len(idx) == 0:
            continue
        if idx[-1] - idx[0] + 1 != len(idx):
            reentries += 1
            continue
        occupied = psis[idx]
        if flags[-1]:
            half_lines += 1           # forward exit beyond the grid or t+ = inf
        elif occupied.max() <= spec.delta:
            clause_failures += 1
        if not flags[0] and occupied.min() >= -spec.delta:
            clause_failures += 1
    return ConvexityReport(trials, reentries, clause_failures, half_lines,
                           t_span, grid_points)


def bad_annulus_region(action: LinearAction, inner: float = 0.125,
                       lo: float = 0.25, hi: float = 0.5) -> Callable[[np.ndarray], bool]:
    """A deliberately non-convex control region: a ball plus an annulus in N_+."""
    def region(z: np.ndarray) -> bool:
        _, np_ = n_pm(action, z)
        return np_ < inner or lo < np_ < hi
    return region


# ---------------------------------------------------------------------------
# plurisubharmonicity eigenvalue identity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionSpec:
    """A radial potential profile with first two derivatives."""

    name: str
    f: Callable[[float], float]
    f1: Callable[[float], float]
    f2: Callable[[float], float]
    domain_min: float = 0.0


@dataclass(frozen=True)
class BumpSpec:
    """C^2 cutoff: 1 below r1, 0 above r2, quintic smoothstep between."""

    r1: float = 0.25
    r2: float = 1.0

    def rho(self, t: float) -> float:
        if t <= self.r1:
            return 1.0
        if t >= self.r2:
            return 0.0
        u = (t - self.r1) / (self.r2 - self.r1)
        return 1.0 - (10 * u**3 - 15 * u**4 + 6 * u**5)

    def rho1(self, t: float) -> float:
        if t <= self.r1 or t >= self.r2:
            return 0.0
        w = self.r2 - self.r1
        u = (t - self.r1) / w
        return -(30 * u**2 - 60 * u**3 + 30 * u**4) / w

    def rho2(self, t: float) -> float:
        if t <= self.r1 or t >= self.r2:
            return 0.0
        w = self.r2 - self.r1
        u = (t - self.r1) / w
        return -(60 * u - 180 * u**2 + 120 * u**3) / w**2


def psh_test_family(bump: Optional[BumpSpec] = None) -> list[FunctionSpec]:
    bump = bump or BumpSpec()
    fam = [
        FunctionSpec("t", lambda t: t, lambda t: 1.0, lambda t: 0.0),
        FunctionSpec("t^2", lambda t: t * t, lambda t: 2 * t, lambda t: 2.0),
        FunctionSpec("ln", math.log, lambda t: 1 / t, lambda t: -1 / t**2,
                     domain_min=1e-12),
        FunctionSpec("t+t^2", lambda t: t + t * t, lambda t: 1 + 2 * t,
                     lambda t: 2.0),
        FunctionSpec(
            "smoothed-ln",
            lambda t: bump.rho(t) * math.log(t),
            lambda t: bump.rho1(t) * math.log(t) + bump.rho(t) / t,
            lambda t: (bump.rho2(t) * math.log(t) + 2 * bump.rho1(t) / t
                       - bump.rho(t) / t**2),
            domain_min=1e-12,
        ),
    ]
    return fam


@dataclass(frozen=True)
class PshReport:
    name: str
    t0: float
    eigenvalues: tuple[float, ...]
    closed_form: tuple[float, ...]
    rel_err: float
    kahler: bool

    @property
    def ok(self) -> bool:
        return self.rel_err <= 1e-9


def psh_criterion(spec: FunctionSpec, t0: float, n: int,
                  seed: int = 0) -> PshReport:
    """Eigenvalues of [f' d_jk + f'' conj(z_j) z_k] at |z0|^2 = t0.

    They must be f'(t0) with multiplicity n-1 and f'(t0) + t0 f''(t0); the
    form is Kaehler at z0 exactly when both are positive.
    """
    if t0 <= max(0.0, spec.domain_min):
        raise PreconditionError("t0 must be inside the profile domain")
    rng = np.random.default_rng(seed)
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    z *= math.sqrt(t0) / np.linalg.norm(z)
    f1, f2 = spec.f1(t0), spec.f2(t0)
    H = f1 * np.eye(n, dtype=complex) + f2 * np.outer(np.conj(z), z)
    eig = np.sort(np.linalg.eigvalsh(H))
    closed = np.sort(np.array([f1] * (n - 1) + [f1 + t0 * f2]))
    scale = max(np.max(np.abs(closed)), 1e-300)
    rel = float(np.max(np.abs(eig - closed)) / scale)
    kahler = f1 > 0 and f1 + t0 * f2 > 0
    return PshReport(spec.name, t0, tuple(eig), tuple(closed), rel, kahler)


# ---------------------------------------------------------------------------
# cut tameness identity
# ---------------------------------------------------------------------------

def _omega(u: np.ndarray, v: np.ndarray) -> float:
    return float(np.sum(np.imag(np.conj(u) * v)))


@dataclass(frozen=True)
class CutIdentityReport:
    value: float
    expected: float
    rel_err: float
    orth_1: float
    orth_2: float
    moment_pairing_rel_err: float

    @property
    def ok(self) -> bool:
        return (self.rel_err <= 1e-9 and abs(self.orth_1) <= 1e-9
                and abs(self.orth_2) <= 1e-9
                and self.moment_pairing_rel_err <= 1e-6)


def cut_tameness_identity(action: LinearAction, z: Sequence[complex],
                          w: complex, fd_step: float = 1e-6) -> CutIdentityReport:
    """The descended taming value on the cut of the product model.

    With A = sum a_j^2 |z_j|^2, the vector Xi = xi_M - A/(A+|w|^2) xi_M'
    pairs to zero with xi_M' in both slots, and omega(Xi, J Xi) equals
    |w|^2 A / (A + |w|^2).  Also checks that psi'(z, w) = psi(z) + |w|^2/2
    is a moment map for the diagonal field, by finite differences.
    """
    z = np.asarray(z, dtype=complex)
    w = complex(w)
    a = action.array()
    if action.is_fixed(z) and w == 0:
        raise FixedPointInput("the point is fixed by the diagonal action")
    A = float(np.sum(a**2 * np.abs(z) ** 2))
    xi_m = np.concatenate([1j * a * z, [0.0 + 0.0j]])
    xi_prime = np.concatenate([1j * a * z, [1j * w]])
    c = A / (A + abs(w) ** 2)
    xi_big = xi_m - c * xi_prime

    orth1 = _omega(xi_prime, xi_big)
    orth2 = _omega(xi_prime, 1j * xi_big)
    value = _omega(xi_big, 1j * xi_big)
    expected = abs(w) ** 2 * A / (A + abs(w) ** 2)
    rel = abs(value - expected) / max(abs(expected), 1e-300) if expected != 0 else abs(value)

    # moment pairing: d psi'(v) = omega'(v, xi_M') along random directions
    rng = np.random.default_rng(12345)
    point = np.concatenate([z, [w]])

    def psi_prime(p: np.ndarray) -> float:
        return (moment_standard(action, p[:-1]) + 0.5 * abs(p[-1]) ** 2)

    worst = 0.0
    for _ in range(6):
        v = rng.normal(size=len(point)) + 1j * rng.normal(size=len(point))
        v /= np.linalg.norm(v)
        h = fd_step
        d1 = (psi_prime(point + h * v) - psi_prime(point - h * v)) / (2 * h)
        d2 = (psi_prime(point + h / 2 * v) - psi_prime(point - h / 2 * v)) / h
        fd = (4 * d2 - d1) / 3
        target = _omega(v, xi_prime)
        worst = max(worst, abs(fd - target) / max(abs(target), 1.0))
    return CutIdentityReport(value, expected, rel, orth1, orth2, worst)


# ---------------------------------------------------------------------------
# blow-up potential contraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlowupPotentialReport:
    phi_value: float
    phi_formula: float
    contraction_rel_err: float
    scaling_rel_err: float

    @property
    def ok(self) -> bool:
        return (self.contraction_rel_err <= 1e-5
                and abs(self.phi_value - self.phi_formula)
                <= 1e-9 * max(abs(self.phi_formula), 1e-300)
                and self.scaling_rel_err <= 1e-9)


def blowup_potential_check(action: LinearAction, z: Sequence[complex],
                           bump: Optional[BumpSpec] = None,
                           h: float = 1e-3,
                           richardson_tol: float = 5e-2) -> BlowupPotentialReport:
    """Contract the circle field into i del delbar f(|z|^2), f = rho ln / 2pi.

    Inside the region where rho is 1, the associated Hamiltonian is
    Phi(z) = sum a_j |z_j|^2 / (2 pi |z|^2); the check builds the form from
    second-order finite differences of the potential and verifies the
    contraction identity against first differences of Phi.
    """
    bump = bump or BumpSpec()
    z = np.asarray(z, dtype=complex)
    n = len(z)
    r2 = float(np.sum(np.abs(z) ** 2))
    if r2 <= 0:
        raise PreconditionError("z must be nonzero")
    if (math.sqrt(r2) + 4 * h) ** 2 >= bump.r1:
        raise PreconditionError(
            "z (plus the stencil width) must stay inside the rho = 1 region")
    a = action.array()

    def g(p: np.ndarray) -> float:
        t = float(np.sum(np.abs(p) ** 2))
        return bump.rho(t) * math.log(t) / (2 * math.pi)

    def phi(p: np.ndarray) -> float:
        t = float(np.sum(np.abs(p) ** 2))
        fprime = (bump.rho1(t) * math.log(t) + bump.rho(t) / t) / (2 * math.pi)
        return float(np.sum(a * np.abs(p) ** 2) * fprime)

    phi_val = phi(z)
    phi_formula = float(np.sum(a * np.abs(z) ** 2) / (2 * math.pi * r2))

    lam = 1.0 + min(0.25, (math.sqrt(bump.r1) - math.sqrt(r2) - 4 * h) / (2 * math.sqrt(r2)))
    scaling_err = abs(phi(lam * z) - phi_val) / max(abs(phi_val), 1e-300)

    # real coordinates: p = x + iy interleaved as 2n real directions
    def real_dirs() -> list[np.ndarray]:
        dirs = []
        for j in range(n):
            e = np.zeros(n, dtype=complex)
            e[j] = 1.0
            dirs.append(e)
            e2 = np.zeros(n, dtype=complex)
            e2[j] = 1j
            dirs.append(e2)
        return dirs

    dirs = real_dirs()

    def hessian_entry(da: np.ndarray, db: np.ndarray, step: float) -> float:
        if np.array_equal(da, db):
            return (g(z + step * da) - 2 * g(z) + g(z - step * da)) / step**2
        return (g(z + step * da + step * db) - g(z + step * da - step * db)
                - g(z - step * da + step * db) + g(z - step * da - step * db)
                ) / (4 * step**2)

    def hess(step: float) -> np.ndarray:
        m = np.zeros((2 * n, 2 * n))
        for p_ in range(2 * n):
            for q_ in range(p_, 2 * n):
                m[p_, q_] = m[q_, p_] = hessian_entry(dirs[p_], dirs[q_], step)
        return m

    h1 = hess(h)
    h2 = hess(h / 2)
    hessian = (4 * h2 - h1) / 3
    scale = max(np.max(np.abs(hessian)), 1e-300)
    if np.max(np.abs(h2 - h1)) / scale > richardson_tol:
        raise StepTooLarge("second differences do not converge; reduce h")

    # complex Hessian H_{jk} = d^2 g / dz_j dzbar_k from real second partials
    H = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            xx = hessian[2 * j, 2 * k]
            yy = hessian[2 * j + 1, 2 * k + 1]
            xy = hessian[2 * j, 2 * k + 1]
            yx = hessian[2 * j + 1, 2 * k]
            H[j, k] = 0.25 * ((xx + yy) + 1j * (xy - yx))

    def eta(u: np.ndarray, v: np.ndarray) -> float:
        s1 = np.sum(H * np.outer(u, np.conj(v)))
        return float(-2 * np.imag(s1))

    xi = 1j * a * z
    worst = 0.0
    norm_scale = max(abs(phi_val), 1e-12)
    for v in dirs:
        lhs = eta(xi, v)
        d1 = (phi(z + h * v) - phi(z - h * v)) / (2 * h)
        d2 = (phi(z + h / 2 * v) - phi(z - h / 2 * v)) / h
        dphi = (4 * d2 - d1) / 3
        worst = max(worst, abs(lhs + dphi) / norm_scale)
    return BlowupPotentialReport(phi_val, phi_formula, worst, scaling_err)

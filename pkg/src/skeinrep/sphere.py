"""Representations of the four-puncture sphere algebra from invariants.

The eigenvalue tower of the X3 image is twisted by A^4 here:
lambda_k = x3 A^{4k} + x3^{-1} A^{-4k}.  The ladder operators acquire scalar
offsets beta_k^+/- built from the symmetric puncture combinations

    q1 = p0 p1 + p2 p3,  q2 = p0 p2 + p1 p3,  q3 = p0 p3 + p1 p2,
    Delta = p0 p1 p2 p3 + p0^2 + p1^2 + p2^2 + p3^2,

and the down-then-up composite acts on the k-th eigenline by the scalar R_k.
The product of all R_k has a closed form in terms of T_N at the four roots
of (r^2 + p0 p3 r + p0^2 + p3^2 - 4)(r^2 + p1 p2 r + p1^2 + p2^2 - 4); its
nonvanishing, together with t3 != +/-2, is the genericity condition under
which the construction goes through.

Unlike the torus case the wraparound constant u has no closed form here; it
is determined numerically from the two target traces.  The trace of the
k-step expansion collapses to

    t1(u) = alpha u + beta / u + f,   t2(u) = alpha' u + beta' / u + g

with alpha = -x3^{-N}/s, beta = x3^N prod(R)/s, alpha' = -1/s,
beta' = prod(R)/s, s = x3^N - x3^{-N}; the offsets f, g do not depend on u
and are measured operationally from a trial construction at u = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices
from .chebyshev import chebyshev_eval, solve_chebyshev
from .errors import (DegenerateShadow, NoConsistentRoot, NonScalarChebyshev,
                     VanishingCycle)
from .representation import Representation, assemble
from .scalars import BigComplex, RootSystem, Scalar, approx_eq, solve_quadratic
from .surfaces import SPHERE4, sphere_k
from .torus import LadderSystem, _check_eigenstructure, _check_ladder_property


def sphere_aux_invariants(p0, p1, p2, p3):
    """The four symmetric combinations (q1, q2, q3, Delta)."""
    q1 = p0 * p1 + p2 * p3
    q2 = p0 * p2 + p1 * p3
    q3 = p0 * p3 + p1 * p2
    delta = p0 * p1 * p2 * p3 + p0 * p0 + p1 * p1 + p2 * p2 + p3 * p3
    return q1, q2, q3, delta


@dataclass(frozen=True)
class SphereParams:
    rs: RootSystem
    p0: Scalar
    p1: Scalar
    p2: Scalar
    p3: Scalar
    t1: Scalar
    t2: Scalar
    x3: Scalar

    @property
    def t3(self):
        n = self.rs.N
        return self.x3 ** n + self.x3 ** (-n)

    @property
    def aux(self):
        return sphere_aux_invariants(self.p0, self.p1, self.p2, self.p3)

    @property
    def punctures(self):
        return (self.p0, self.p1, self.p2, self.p3)


def make_sphere_params(p0, p1, p2, p3, t1, t2, x3) -> SphereParams:
    rs = x3.rs
    params = SphereParams(rs, p0, p1, p2, p3, t1, t2, x3)
    s = x3 ** rs.N - x3 ** (-rs.N)
    if s.is_zero():
        raise DegenerateShadow("x3^N = +/-1 puts t3 at +/-2")
    return params


@dataclass(frozen=True)
class LadderScalars:
    """beta_k^+/- offsets and the composite scalars R_k, k = 1..N."""

    beta_plus: tuple
    beta_minus: tuple
    r_scalars: tuple

    def cycle_product(self):
        prod = None
        for r in self.r_scalars:
            prod = r if prod is None else prod * r
        return prod


def ladder_scalars_sphere(params: SphereParams) -> LadderScalars:
    rs = params.rs
    n = rs.N
    x3 = params.x3
    x3i = x3 ** (-1)
    q1, q2, q3, delta = params.aux

    beta_plus, beta_minus = [], []
    for k in range(1, n + 1):
        bp = (q2 + x3 * rs.a_pow(4 * k + 2) * q1) / (x3 * rs.a_pow(4 * k + 2) - x3i * rs.a_pow(-4 * k - 2))
        bm = (-q2 - x3i * rs.a_pow(-4 * k + 2) * q1) / (x3 * rs.a_pow(4 * k - 2) - x3i * rs.a_pow(-4 * k + 2))
        beta_plus.append(bp)
        beta_minus.append(bm)

    r_scalars = []
    for k in range(1, n + 1):
        bp = beta_plus[k - 1]
        bm_next = beta_minus[k % n]          # offsets are N-periodic
        rk = -(delta - 2
               + x3 * x3 * rs.a_pow(8 * k + 4)
               + x3i * x3i * rs.a_pow(-8 * k - 4)
               + (x3 * rs.a_pow(4 * k + 2) + x3i * rs.a_pow(-4 * k - 2)) * q3
               - bm_next * bp)
        r_scalars.append(rk)
    return LadderScalars(tuple(beta_plus), tuple(beta_minus), tuple(r_scalars))


def ladder_product_closed_form(params: SphereParams) -> Scalar:
    """Closed form of prod_k R_k through T_N at four quadratic roots."""
    rs = params.rs
    n = rs.N
    t3 = params.t3
    one = rs.one
    r0, r3 = solve_quadratic(one, params.p0 * params.p3,
                             params.p0 ** 2 + params.p3 ** 2 - 4)
    r1, r2 = solve_quadratic(one, params.p1 * params.p2,
                             params.p1 ** 2 + params.p2 ** 2 - 4)
    num = one
    for r in (r0, r1, r2, r3):
        num = num * (t3 - chebyshev_eval(n, r))
    return -num / (t3 * t3 - 4)


def build_sphere_rep_with_u(params: SphereParams, u: Scalar,
                            ladder: LadderScalars = None) -> Representation:
    """Assemble the matrices from the eigenline ladder with wraparound u."""
    rs = params.rs
    n = rs.N
    if u.is_zero():
        raise VanishingCycle("the wraparound constant u must be nonzero")
    if ladder is None:
        ladder = ladder_scalars_sphere(params)
    x3 = params.x3
    x3i = x3 ** (-1)
    lam = [x3 * rs.a_pow(4 * k) + x3i * rs.a_pow(-4 * k) for k in range(1, n + 1)]
    e = [x3 * rs.a_pow(4 * k) - x3i * rs.a_pow(-4 * k) for k in range(1, n + 1)]

    m1 = matrices.zeros(rs, n)
    m2 = matrices.zeros(rs, n)
    m3 = matrices.diagonal(lam)
    for k in range(1, n + 1):
        ek = e[k - 1]
        bp, bm = ladder.beta_plus[k - 1], ladder.beta_minus[k - 1]
        au = -x3i * rs.a_pow(-4 * k - 2) / ek
        ad = x3 * rs.a_pow(4 * k - 2) / ek
        up_row = k if k < n else 0
        up_scale = rs.one if k < n else u
        down_row = k - 2 if k >= 2 else n - 1
        down_scale = ladder.r_scalars[k - 2] if k >= 2 else ladder.r_scalars[n - 1] / u
        m1[up_row, k - 1] = m1[up_row, k - 1] + au * up_scale
        m1[down_row, k - 1] = m1[down_row, k - 1] + ad * down_scale
        m1[k - 1, k - 1] = m1[k - 1, k - 1] + (x3i * rs.a_pow(-4 * k - 2) * bp - x3 * rs.a_pow(4 * k - 2) * bm) / ek
        m2[up_row, k - 1] = m2[up_row, k - 1] + (-rs.one / ek) * up_scale
        m2[down_row, k - 1] = m2[down_row, k - 1] + (rs.one / ek) * down_scale
        m2[k - 1, k - 1] = m2[k - 1, k - 1] + (bp - bm) / ek

    punctures = dict(zip(SPHERE4.punctures, params.punctures))
    provenance = {
        "params": {"p0": params.p0, "p1": params.p1, "p2": params.p2, "p3": params.p3,
                   "t1": params.t1, "t2": params.t2, "t3": params.t3},
        "gauge": {"x3": params.x3, "u": u},
    }
    return assemble(SPHERE4, rs, n, {"X1": m1, "X2": m2, "X3": m3}, punctures, provenance)


def _trace_scalar(rep, name):
    """Read T_N of a generator image, requiring it to be scalar.

    Runs the three-term recurrence on an mpmath matrix; this sits on the hot
    path of the u determination.
    """
    import mpmath
    from mpmath import mp

    rs = rep.rs
    n = rs.N
    m = matrices.to_mp_matrix(rep.matrix(name))
    with mp.workprec(rs.precision_bits):
        prev2 = 2 * mp.eye(rep.dim)
        prev1 = m
        for _ in range(n - 1):
            prev2, prev1 = prev1, m * prev1 - prev2
        mean = sum(prev1[i, i] for i in range(rep.dim)) / rep.dim
        eps = mp.mpf(rs.tolerance.rel_eps)
        for i in range(rep.dim):
            for j in range(rep.dim):
                target = mean if i == j else mpmath.mpc(0)
                bound = eps * max(mp.mpf(1), abs(prev1[i, j]), abs(target))
                if abs(prev1[i, j] - target) >= bound:
                    raise NonScalarChebyshev(
                        f"T_N({name}) is not scalar at the trial wraparound value")
        return BigComplex(rs, mean.real, mean.imag)


def solve_u(params: SphereParams, t1_target, t2_target,
            ladder: LadderScalars = None) -> Scalar:
    """Determine the wraparound constant from the two target traces.

    The u-independent offsets f, g are measured by constructing the
    representation at a trial value, then the quadratic
    alpha u^2 + (f - t1) u + beta = 0 is solved and the root consistent with
    the t2 equation returned.
    """
    rs = params.rs
    n = rs.N
    if ladder is None:
        ladder = ladder_scalars_sphere(params)
    x3 = params.x3
    s = x3 ** n - x3 ** (-n)
    prod_r = ladder.cycle_product()
    if prod_r.is_zero():
        raise VanishingCycle("the ladder cycle product vanishes; u is not determined")
    alpha = -(x3 ** (-n)) / s
    beta = x3 ** n * prod_r / s
    alpha2 = -rs.one / s
    beta2 = prod_r / s

    trial_errors = []
    for trial in (rs.one, rs.A):
        try:
            trial_rep = build_sphere_rep_with_u(params, trial, ladder)
            t1_trial = _trace_scalar(trial_rep, "X1")
            t2_trial = _trace_scalar(trial_rep, "X2")
            break
        except NonScalarChebyshev as exc:  # retry once with a shifted trial value
            trial_errors.append(exc)
    else:
        raise trial_errors[-1]
    trial_inv = trial ** (-1)
    f = t1_trial - alpha * trial - beta * trial_inv
    g = t2_trial - alpha2 * trial - beta2 * trial_inv

    roots = solve_quadratic(alpha, f - t1_target, beta)
    for root in roots:
        if root.is_zero():
            continue
        t2_value = alpha2 * root + beta2 * root ** (-1) + g
        if approx_eq(t2_value, t2_target):
            return root
    raise NoConsistentRoot(
        "neither root of the trace quadratic reproduces the second trace; "
        "the invariants are not realizable together")


def build_sphere_rep(p0, p1, p2, p3, t1, t2, t3) -> Representation:
    """Full pipeline from invariants: gauge choice, u determination, assembly."""
    rs = t3.rs
    if not isinstance(t3, BigComplex):
        raise TypeError("sphere reconstruction requires the bigfloat backend")
    two = rs.scalar(2)
    if approx_eq(t3, two) or approx_eq(t3, -two):
        raise DegenerateShadow(f"t3 = {t3} is at +/-2; the X3 spectrum degenerates")
    x3 = solve_chebyshev(t3).base
    params = make_sphere_params(p0, p1, p2, p3, t1, t2, x3)
    ladder = ladder_scalars_sphere(params)
    closed = ladder_product_closed_form(params)
    if closed.is_zero():
        raise VanishingCycle("the ladder cycle product vanishes for these invariants")
    u = solve_u(params, t1, t2, ladder)
    return build_sphere_rep_with_u(params, u, ladder)


def build_sphere_rep_from_params(params: SphereParams) -> Representation:
    """Pipeline for a prescribed gauge x3 (used by gauge-orbit enumeration)."""
    ladder = ladder_scalars_sphere(params)
    closed = ladder_product_closed_form(params)
    if closed.is_zero():
        raise VanishingCycle("the ladder cycle product vanishes for these invariants")
    u = solve_u(params, params.t1, params.t2, ladder)
    return build_sphere_rep_with_u(params, u, ladder)


def small_sphere_rep(p_values, rs: RootSystem = None) -> Representation:
    """The 1-dimensional representation of a sphere with at most 3 punctures.

    An empty tuple gives the trivial representation of the
    unpunctured-sphere algebra; pass ``rs`` explicitly in that case.
    """
    p_values = tuple(p_values)
    surface = sphere_k(len(p_values))
    if p_values:
        rs = p_values[0].rs
    elif rs is None:
        raise ValueError("the empty puncture tuple needs an explicit root system")
    punctures = dict(zip(surface.punctures, p_values))
    return assemble(surface, rs, 1, {}, punctures, {"params": dict(punctures)})


def ladder_system_sphere(rep: Representation, params: SphereParams) -> LadderSystem:
    """Ladder operators with the A^4 twist and scalar offsets.

    U_k = A^2 X1 - x3 A^{4k} X2 + beta_k^+,
    D_k = A^2 X1 - x3^{-1} A^{-4k} X2 + beta_k^-.
    """
    rs = rep.rs
    n = rep.dim
    x3 = params.x3
    x3i = x3 ** (-1)
    lam = [x3 * rs.a_pow(4 * k) + x3i * rs.a_pow(-4 * k) for k in range(1, n + 1)]
    _check_eigenstructure(rep, lam)
    ladder = ladder_scalars_sphere(params)
    m1, m2 = rep.matrix("X1"), rep.matrix("X2")
    a2_m1 = matrices.mat_scale(rs.a_pow(2), m1)
    ups, downs = [], []
    for k in range(1, n + 1):
        up = a2_m1 - matrices.mat_scale(x3 * rs.a_pow(4 * k), m2) \
            + matrices.scalar_matrix(ladder.beta_plus[k - 1], n)
        down = a2_m1 - matrices.mat_scale(x3i * rs.a_pow(-4 * k), m2) \
            + matrices.scalar_matrix(ladder.beta_minus[k - 1], n)
        ups.append(up)
        downs.append(down)
    _check_ladder_property(ups, downs, rep)
    u = rep.provenance.get("gauge", {}).get("u")
    if u is None:
        u = ups[n - 1][0, n - 1]
    return LadderSystem(4, tuple(lam), tuple(ups), tuple(downs), u)

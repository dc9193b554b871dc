import random

import numpy as np
import pytest

from skeinrep import matrices
from skeinrep.chebyshev import solve_chebyshev
from skeinrep.scalars import BigComplex, approx_eq, make_root_system
from skeinrep.serialize import dumps_canonical
from skeinrep.surfaces import SPHERE4, TORUS1
from skeinrep.torus import (build_torus_rep, puncture_chebyshev_value,
                            torus_params_from_shadow)
from skeinrep.uniqueness import (ExperimentConfig, gauge_orbit, genericity_check,
                                 intertwiner_search, sample_sphere_invariants,
                                 sample_torus_shadow, uniqueness_experiment)


@pytest.fixture(scope="module")
def rs():
    return make_root_system(3, "bigfloat", 256)


@pytest.fixture(scope="module")
def base_rep(rs):
    rng = random.Random(1)
    inv = sample_torus_shadow(rs, rng)
    params = torus_params_from_shadow(inv["t1"], inv["t2"], inv["t3"], inv["p"])
    return build_torus_rep(params), params, inv


def conjugate(rep, g, g_inv):
    from skeinrep.representation import Representation

    mats = {name: matrices.freeze(matrices.matmul(matrices.matmul(g, m), g_inv))
            for name, m in rep.matrices.items()}
    return Representation(rep.surface, rep.rs, rep.dim, mats, rep.puncture_scalars, {})


def random_invertible(rs, n, rng):
    from mpmath import mp

    g = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            g[i, j] = rs.scalar(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
    with mp.workprec(rs.precision_bits):
        gm = matrices.to_mp_matrix(g) ** -1
        g_inv = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                z = gm[i, j]
                g_inv[i, j] = BigComplex(rs, z.real, z.imag)
    return g, g_inv


# ---------------------------------------------------------------------------
# intertwiner search
# ---------------------------------------------------------------------------

def test_self_intertwiner_is_scalar(base_rep):
    rep, _, _ = base_rep
    cert = intertwiner_search(rep, rep)
    assert cert is not None
    assert cert.worst_residual < 1e-40
    # normalized certificate of an irreducible self-pairing is the identity
    # up to the chosen scale; check it is proportional to Id
    n = rep.dim
    for i in range(n):
        for j in range(n):
            if i != j:
                assert approx_eq(cert.matrix[i, j], rep.rs.zero)


def test_conjugation_recovered(base_rep, rs):
    rep, _, _ = base_rep
    rng = random.Random(2)
    g, g_inv = random_invertible(rs, rep.dim, rng)
    other = conjugate(rep, g, g_inv)
    # M rho = rho_other M forces M proportional to g
    cert = intertwiner_search(rep, other)
    assert cert is not None
    assert cert.worst_residual < 1e-40
    ratios = []
    for i in range(rep.dim):
        for j in range(rep.dim):
            ratios.append(cert.matrix[i, j] / g[i, j])
    for r in ratios[1:]:
        assert approx_eq(r, ratios[0])


def test_distinct_puncture_scalars_no_intertwiner(base_rep, rs):
    rep, params, inv = base_rep
    # a different solution p' of the same compatibility equation
    w = puncture_chebyshev_value(inv["t1"], inv["t2"], inv["t3"])
    candidates = solve_chebyshev(w).values
    other_p = next(c for c in candidates if not approx_eq(c, inv["p"]))
    params2 = torus_params_from_shadow(inv["t1"], inv["t2"], inv["t3"], other_p)
    rep2 = build_torus_rep(params2)
    assert intertwiner_search(rep, rep2) is None


def test_certificates_compose(base_rep, rs):
    rep, params, _ = base_rep
    variants = gauge_orbit(params)
    rep_b = build_torus_rep(variants[1])
    rep_c = build_torus_rep(variants[2])
    m_ab = intertwiner_search(rep, rep_b).matrix
    m_bc = intertwiner_search(rep_b, rep_c).matrix
    m_ac = matrices.matmul(m_bc, m_ab)
    worst = 0.0
    for g in rep.surface.generators:
        defect = matrices.matmul(m_ac, rep.matrix(g)) - matrices.matmul(rep_c.matrix(g), m_ac)
        _, mag = matrices.residual_report(defect)
        worst = max(worst, mag)
    assert worst < 1e-38


def test_schur_scale_uniqueness(base_rep):
    rep, params, _ = base_rep
    rep_b = build_torus_rep(gauge_orbit(params)[3])
    c1 = intertwiner_search(rep, rep_b)
    c2 = intertwiner_search(rep, rep_b, tol=None)
    ratio = None
    for i in range(rep.dim):
        for j in range(rep.dim):
            if matrices.entry_magnitude(c1.matrix[i, j]) > 0.1:
                r = c2.matrix[i, j] / c1.matrix[i, j]
                if ratio is None:
                    ratio = r
                else:
                    assert approx_eq(r, ratio)
    assert ratio is not None


# ---------------------------------------------------------------------------
# gauge orbit
# ---------------------------------------------------------------------------

def test_orbit_size_and_t3(base_rep, rs):
    _, params, inv = base_rep
    variants = gauge_orbit(params)
    assert len(variants) == 2 * rs.N
    for v in variants:
        assert approx_eq(v.t3, inv["t3"])


def test_orbit_reps_pairwise_isomorphic(base_rep):
    rep, params, _ = base_rep
    variants = gauge_orbit(params)
    reps = [build_torus_rep(v) for v in variants]
    for other in reps[1:]:
        cert = intertwiner_search(reps[0], other)
        assert cert is not None and cert.worst_residual < 1e-40


# ---------------------------------------------------------------------------
# genericity
# ---------------------------------------------------------------------------

def test_genericity_zero_shadow(rs):
    zero = rs.zero
    report = genericity_check(TORUS1, {"t1": zero, "t2": zero, "t3": zero})
    assert not report.generic
    assert not report.checks["ladder_cycle_nonzero"]
    assert report.exceptional["all_traces_zero"]


def test_genericity_two_shadow(rs):
    two = rs.scalar(2)
    report = genericity_check(TORUS1, {"t1": two, "t2": two, "t3": two})
    assert not report.generic
    assert report.exceptional["all_traces_pm2"]


def test_genericity_isotropic_case(rs):
    # one trace at 2, the others at +/- 2i/sqrt(3) arranged so the product is -8/3
    import mpmath
    from mpmath import mp

    with mp.workprec(rs.precision_bits):
        iso = rs.scalar(mpmath.mpc(0, 2) / mp.sqrt(3))
    report = genericity_check(TORUS1, {"t1": rs.scalar(2), "t2": iso, "t3": iso})
    prod = rs.scalar(2) * iso * iso
    assert approx_eq(prod, rs.scalar(-8) / rs.scalar(3))
    assert report.exceptional["one_pm2_two_isotropic"]


def test_genericity_random_draw_generic(rs):
    rng = random.Random(3)
    inv = sample_torus_shadow(rs, rng)
    report = genericity_check(TORUS1, {"t1": inv["t1"], "t2": inv["t2"], "t3": inv["t3"]})
    assert report.generic
    assert not any(report.exceptional.values())


def test_genericity_sphere(rs):
    rng = random.Random(4)
    inv = sample_sphere_invariants(rs, rng)
    report = genericity_check(SPHERE4, inv)
    assert report.generic
    assert "hits_with_t3" in report.details and "hits_with_minus_t3" in report.details
    degenerate = genericity_check(SPHERE4, dict(inv, t3=rs.scalar(2)))
    assert not degenerate.generic


# ---------------------------------------------------------------------------
# experiment
# ---------------------------------------------------------------------------

def test_experiment_passes_and_is_deterministic():
    config = ExperimentConfig(TORUS1, 3, 3, seed=11, precision_bits=192)
    r1 = uniqueness_experiment(config)
    r2 = uniqueness_experiment(config)
    assert r1.passed
    assert r1.worst_residual < 1e-20
    assert dumps_canonical(r1.to_json()) == dumps_canonical(r2.to_json())


def test_experiment_sphere_smoke():
    config = ExperimentConfig(SPHERE4, 3, 2, seed=5, precision_bits=192)
    report = uniqueness_experiment(config)
    assert report.passed
    for rec in report.records:
        assert rec["variants"] == 6
        assert rec["pairs_checked"] == 15
        assert rec["roundtrip_ok"]

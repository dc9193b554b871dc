"""Gauge orbits, isomorphism certificates, and the uniqueness experiment.

The gauge scalar x3 is one of 2N admissible choices; different choices
produce different matrices but isomorphic representations, certified by an
invertible intertwiner.  Representations sharing a shadow but carrying
different puncture scalars are never isomorphic: the solver's nullspace is
empty.  The experiment below automates this over random generic invariants.
"""

import random

from skeinrep import (TORUS1, ExperimentConfig, build_torus_rep, gauge_orbit,
                      genericity_check, intertwiner_search, make_root_system,
                      puncture_chebyshev_value, sample_torus_shadow, solve_chebyshev,
                      torus_params_from_shadow, uniqueness_experiment)

rs = make_root_system(3, "bigfloat", 256)
rng = random.Random(21)

# ---------------------------------------------------------------------------
# a full gauge orbit is pairwise isomorphic
# ---------------------------------------------------------------------------

inv = sample_torus_shadow(rs, rng)
params = torus_params_from_shadow(inv["t1"], inv["t2"], inv["t3"], inv["p"])
orbit = gauge_orbit(params)
print(f"gauge orbit size: {len(orbit)} (2N variants of x3)")
reps = [build_torus_rep(v) for v in orbit]
base = reps[0]
for idx, other in enumerate(reps[1:], start=1):
    cert = intertwiner_search(base, other)
    print(f"  variant {idx}: intertwiner found, worst residual {cert.worst_residual:.2e}, "
          f"condition {cert.condition_estimate:.1f}")

# ---------------------------------------------------------------------------
# different puncture scalars on the same shadow: no intertwiner
# ---------------------------------------------------------------------------

w = puncture_chebyshev_value(inv["t1"], inv["t2"], inv["t3"])
other_p = next(c for c in solve_chebyshev(w).values
               if float((c - inv["p"]).magnitude()) > 1e-3)
rep_other = build_torus_rep(torus_params_from_shadow(inv["t1"], inv["t2"], inv["t3"], other_p))
print(f"\nsame shadow, different puncture scalar: intertwiner_search -> "
      f"{intertwiner_search(base, rep_other)}")

# ---------------------------------------------------------------------------
# genericity report
# ---------------------------------------------------------------------------

report = genericity_check(TORUS1, {"t1": inv["t1"], "t2": inv["t2"], "t3": inv["t3"]})
print(f"\ngenericity of the sampled shadow: {report.generic}")
print(f"  hypothesis checks: {report.checks}")
print(f"  exceptional loci hit: {report.exceptional}")

zero_report = genericity_check(TORUS1, {"t1": rs.zero, "t2": rs.zero, "t3": rs.zero})
print(f"zero shadow is exceptional: generic={zero_report.generic}, "
      f"{zero_report.exceptional}")

# ---------------------------------------------------------------------------
# the seeded experiment
# ---------------------------------------------------------------------------

config = ExperimentConfig(TORUS1, N=3, samples=5, seed=2024, precision_bits=192)
result = uniqueness_experiment(config)
print(f"\nexperiment: {config.samples} samples at N = {config.N}, seed {config.seed}")
print(f"  passed: {result.passed}")
print(f"  worst intertwiner residual: {result.worst_residual:.2e}")
print(f"  per-sample pairs checked: {[r['pairs_checked'] for r in result.records]}")

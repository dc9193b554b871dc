"""Building punctured-torus representations from their invariants.

A representation is pinned by minus-traces (t1, t2, t3) of the three loop
generators and the puncture scalar p, subject to T_N(p) matching the shadow.
The construction runs through a gauge scalar x3 with t3 = x3^N + x3^{-N} and
the eigenline ladder of the X3 image.  The exact backend exposes the family
through the (x3, p, u) parametrization where every identity holds with
integer-exact arithmetic.
"""

import random
from fractions import Fraction

from skeinrep import (build_torus_rep, chebyshev_eval, closed_torus_rep, extract_invariants,
                      ladder_system_torus, make_root_system, puncture_chebyshev_value,
                      sample_torus_shadow, solve_chebyshev, solve_quadratic,
                      torus_params_exact, torus_params_from_shadow, verify_relations)
from skeinrep import matrices

# ---------------------------------------------------------------------------
# bigfloat pipeline: random shadow -> representation -> invariants round-trip
# ---------------------------------------------------------------------------

rs = make_root_system(5, "bigfloat", 256)
rng = random.Random(7)
inv = sample_torus_shadow(rs, rng)
params = torus_params_from_shadow(inv["t1"], inv["t2"], inv["t3"], inv["p"])
rep = build_torus_rep(params)
print(f"built a dimension-{rep.dim} representation (N = {rs.N})")
print(f"gauge choice x3 = {params.x3}")
print(f"wraparound u = -t1 - t2 x3^N = {params.u}")

report = verify_relations(rep)
print("\n" + report.summary())

shadow = extract_invariants(rep)
print(f"\nround-trip differences:")
for name, target in (("X1", inv["t1"]), ("X2", inv["t2"]), ("X3", inv["t3"])):
    print(f"  t({name}): {float((shadow.t(name) - target).magnitude()):.2e}")
print(f"  p: {float((shadow.puncture_values['P'] - inv['p']).magnitude()):.2e}")

# ---------------------------------------------------------------------------
# the ladder: up/down operators shifting the eigenlines of the X3 image
# ---------------------------------------------------------------------------

ladder = ladder_system_torus(rep, params.x3)
comp = matrices.matmul(ladder.down[1], ladder.up[0])
print(f"\ndown(2) . up(1) acts on the first eigenline by {comp[0, 0]}")
print(f"predicted: {-(inv['p'] + params.x3 ** 2 * rs.a_pow(6) + params.x3 ** -2 * rs.a_pow(-6))}")

# ---------------------------------------------------------------------------
# exact family: identities hold with zero error
# ---------------------------------------------------------------------------

rse = make_root_system(3)
x3 = rse.A + 1
p = rse.A - 2
u = rse.scalar(Fraction(3, 2))
pe = torus_params_exact(x3, p, u)
repe = build_torus_rep(pe)
tn = chebyshev_eval(3, repe.matrix("X1"))
print(f"\nexact family at N = 3: T_3(X1 image) == t1 * Id exactly: "
      f"{matrices.read_scalar_matrix(tn, rse) == pe.t1}")

# ---------------------------------------------------------------------------
# closed torus: the puncture scalar is forced to -(A^2 + A^-2)
# ---------------------------------------------------------------------------

from skeinrep import DegenerateShadow, IncompatiblePuncture, VanishingCycle

rsf = make_root_system(3, "bigfloat", 256)
rng = random.Random(3)
while True:
    a1 = rsf.scalar(complex(rng.uniform(0.7, 1.5), rng.uniform(-0.5, 0.5)))
    a2 = rsf.scalar(complex(rng.uniform(0.7, 1.5), rng.uniform(-0.5, 0.5)))
    t1, t2 = a1 + a1 ** -1, a2 + a2 ** -1
    candidates = solve_quadratic(rsf.one, t1 * t2, t1 * t1 + t2 * t2 - 4)
    t3 = candidates[0]
    try:
        closed = closed_torus_rep(t1, t2, t3)
        break
    except (DegenerateShadow, IncompatiblePuncture, VanishingCycle):
        continue
print(f"\nclosed torus representation: {closed.surface}, dim {closed.dim}")
print(verify_relations(closed).summary())

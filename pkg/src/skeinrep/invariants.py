"""Extraction and verification of representation invariants.

The shadow of a representation is read off through the degree-N Chebyshev
polynomial: T_N of each loop generator image must be a scalar t, and the
stored trace is Tr r(X) = -t.  Each puncture generator must act by a scalar
p with T_N(p) = -Tr r(P).  Presentation relations are checked as defect
expressions evaluated through the expression module, and irreducibility is
decided by the dimension of the commutant.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices
from .chebyshev import chebyshev_eval
from .expressions import evaluate, relation_defects
from .representation import Representation
from .scalars import Tolerance, approx_eq
from .torus import puncture_chebyshev_value

TRACE_CONVENTION = "traces store Tr r(X) = -t where T_N(rho(X)) = t*Id"


@dataclass
class VerificationReport:
    surface: str
    dim: int
    tolerance: float
    relation_residuals: dict
    relation_exact: dict
    chebyshev_deviations: dict
    puncture_deviations: dict
    commutant_dim: int
    checks: dict
    passed: bool

    def summary(self) -> str:
        lines = [f"{self.surface} representation, dim {self.dim}: "
                 f"{'PASS' if self.passed else 'FAIL'} (tolerance {self.tolerance:g})"]
        for name, ok in self.checks.items():
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
        return "\n".join(lines)


def _passes(rep, exact_zero, magnitude, rel_eps):
    if rep.rs.backend == "exact":
        return exact_zero
    return magnitude < rel_eps


def verify_relations(rep: Representation, tol: Tolerance = None,
                     include_commutant: bool = True) -> VerificationReport:
    """Evaluate every presentation relation defect and scalar-structure check.

    Failures are recorded in the report, never raised.
    """
    rs = rep.rs
    rel_eps = (tol.rel_eps if tol is not None else rs.tolerance.rel_eps)
    residuals, exact_flags, checks = {}, {}, {}

    for name, expr in relation_defects(rep.surface, rs).items():
        defect = evaluate(expr, rep)
        exact_zero, mag = matrices.residual_report(defect)
        residuals[name] = mag
        exact_flags[name] = exact_zero
        checks[f"relation {name}"] = _passes(rep, exact_zero, mag, rel_eps)

    cheb_devs = {}
    for name in rep.surface.x_generators:
        tn = chebyshev_eval(rs.N, rep.matrix(name))
        _, worst = matrices.scalar_deviation(tn, rs)
        cheb_devs[name] = worst
        checks[f"T_N({name}) scalar"] = _passes(rep, worst == 0.0, worst, rel_eps)

    punct_devs = {}
    for name in rep.surface.punctures:
        target = matrices.scalar_matrix(rep.puncture_scalars[name], rep.dim)
        defect = rep.matrix(name) - target
        exact_zero, mag = matrices.residual_report(defect)
        punct_devs[name] = mag
        checks[f"{name} scalar"] = _passes(rep, exact_zero, mag, rel_eps)

    commutant = commutant_dimension(rep, tol) if include_commutant else -1
    if include_commutant:
        checks["commutant dimension 1"] = commutant == 1

    return VerificationReport(
        surface=rep.surface.tag,
        dim=rep.dim,
        tolerance=rel_eps,
        relation_residuals=residuals,
        relation_exact=exact_flags,
        chebyshev_deviations=cheb_devs,
        puncture_deviations=punct_devs,
        commutant_dim=commutant,
        checks=checks,
        passed=all(checks.values()),
    )


@dataclass
class ShadowInvariants:
    """Classical shadow data of a representation.

    ``traces`` holds Tr r(X_i); the puncture scalars are the raw p_k, with
    T_N(p_k) = -Tr r(P_k) defining the shadow at the punctures.
    """

    surface: str
    traces: dict
    puncture_values: dict
    compatibility_ok: bool
    convention: str = TRACE_CONVENTION

    def t(self, name):
        """Minus the stored trace: the scalar with T_N(rho(X)) = t*Id."""
        return -self.traces[name]


def _sphere_classical_relation_ok(t_vals, p_vals, rs, tol):
    """Trace relation of the four-puncture sphere at the classical level."""
    tp = [chebyshev_eval(rs.N, p) for p in p_vals]
    q1 = tp[0] * tp[1] + tp[2] * tp[3]
    q2 = tp[0] * tp[2] + tp[1] * tp[3]
    q3 = tp[0] * tp[3] + tp[1] * tp[2]
    delta = tp[0] * tp[1] * tp[2] * tp[3] + tp[0] ** 2 + tp[1] ** 2 + tp[2] ** 2 + tp[3] ** 2
    t1, t2, t3 = t_vals
    lhs = (t1 * t2 * t3 - t1 * t1 - t2 * t2 - t3 * t3
           - q1 * t1 - q2 * t2 - q3 * t3 + 4)
    return approx_eq(lhs, delta, tol)


def extract_invariants(rep: Representation, tol: Tolerance = None) -> ShadowInvariants:
    """Read the classical shadow and puncture invariants off a representation.

    Raises :class:`NonScalarChebyshev` when T_N of a generator image fails to
    be scalar, which signals a representation outside the generic family
    (for instance a reducible one).
    """
    rs = rep.rs
    traces = {}
    t_vals = {}
    for name in rep.surface.x_generators:
        tn = chebyshev_eval(rs.N, rep.matrix(name))
        t = matrices.read_scalar_matrix(tn, rs, tol)
        t_vals[name] = t
        traces[name] = -t
    puncture_values = {}
    for name in rep.surface.punctures:
        puncture_values[name] = matrices.read_scalar_matrix(rep.matrix(name), rs, tol)

    kind = rep.surface.kind
    if kind == "torus1":
        expected = puncture_chebyshev_value(t_vals["X1"], t_vals["X2"], t_vals["X3"])
        compat = approx_eq(chebyshev_eval(rs.N, puncture_values["P"]), expected, tol)
    elif kind == "torus0":
        expected = puncture_chebyshev_value(t_vals["X1"], t_vals["X2"], t_vals["X3"])
        compat = approx_eq(rs.scalar(-2), expected, tol)
    elif kind == "sphere4":
        compat = _sphere_classical_relation_ok(
            (t_vals["X1"], t_vals["X2"], t_vals["X3"]),
            [puncture_values[p] for p in rep.surface.punctures], rs, tol)
    else:
        compat = True
    return ShadowInvariants(rep.surface.tag, traces, puncture_values, compat)


def commuting_system(rep_a: Representation, rep_b: Representation):
    """Stacked linear system for M with M rho_a(g) = rho_b(g) M over all generators.

    Unknowns are the row-major entries of M; one block of dim^2 equations
    per generator.  A puncture generator acting by the same scalar on both
    sides contributes only zero equations and is skipped; differing scalars
    contribute the block (p_a - p_b) M = 0, which is what excludes
    intertwiners across distinct central characters.
    """
    if rep_a.dim != rep_b.dim:
        raise ValueError("dimension mismatch")
    n = rep_a.dim
    rs = rep_a.rs
    dense_gens, scalar_rows = [], []
    for g in rep_a.surface.generators:
        if g in rep_a.puncture_scalars:
            pa, pb = rep_a.puncture_scalars[g], rep_b.puncture_scalars[g]
            diff = pa - pb
            if not diff.is_zero():
                scalar_rows.append(diff)
        else:
            dense_gens.append(g)
    system = matrices.zeros(rs, len(dense_gens) * n * n + len(scalar_rows) * n * n, n * n)
    row = 0
    for g in dense_gens:
        ma, mb = rep_a.matrix(g), rep_b.matrix(g)
        for i in range(n):
            for l in range(n):
                # sum_j M[i,j] * ma[j,l] - sum_j mb[i,j] * M[j,l] = 0
                for j in range(n):
                    col = i * n + j
                    system[row, col] = system[row, col] + ma[j, l]
                    col = j * n + l
                    system[row, col] = system[row, col] - mb[i, j]
                row += 1
    for diff in scalar_rows:
        for entry in range(n * n):
            system[row, entry] = diff
            row += 1
    return system


def commutant_dimension(rep: Representation, tol: Tolerance = None) -> int:
    """Dimension of {M : M commutes with every generator image}.

    Equals 1 exactly when the representation is irreducible.
    """
    if not rep.surface.generators:
        return rep.dim * rep.dim
    system = commuting_system(rep, rep)
    if system.shape[0] == 0:
        # only scalar generators, all matching: every matrix commutes,
        # which for a 1-dimensional representation still means dimension 1
        return rep.dim * rep.dim
    nullity, _ = matrices.nullspace(system, tol, want_vectors=False)
    return nullity

"""Root systems, the two scalar backends, and Chebyshev identities.

Everything in the package happens over a root system: an odd integer N and
the scalar A, a primitive N-th root of -1.  This script builds both backends
for N = 5, checks the defining identities, and demonstrates the normalized
Chebyshev polynomials that tie matrix traces to eigenvalue powers.
"""

from fractions import Fraction

from skeinrep import (chebyshev_coeffs, chebyshev_eval, cyclotomic_polynomial,
                      make_root_system, numeric_bridge, solve_chebyshev)

# ---------------------------------------------------------------------------
# exact backend: Q(A) with canonical coefficient vectors
# ---------------------------------------------------------------------------

rs = make_root_system(5)
print(f"exact root system: {rs}")
print(f"  modulus (10th cyclotomic polynomial): {cyclotomic_polynomial(10)}")
print(f"  A           = {rs.A}")
print(f"  A^5         = {rs.A ** 5}        (a primitive 5th root of -1)")
print(f"  A^10        = {rs.A ** 10}")
print(f"  1/A         = {rs.A.inverse()}")
print(f"  A * (1/A)   = {rs.A * rs.A.inverse()}")

# the same value bridged to 128-bit complex arithmetic
z = numeric_bridge(rs.A, 128)
print(f"  A bridged   = {z}")

# ---------------------------------------------------------------------------
# Chebyshev polynomials: T_0 = 2, T_1 = x, T_n = x T_(n-1) - T_(n-2)
# ---------------------------------------------------------------------------

print("\nnormalized Chebyshev coefficients:")
for n in range(6):
    print(f"  T_{n}: {chebyshev_coeffs(n).coeffs}")

# diagonalization: T_n(a + 1/a) = a^n + a^-n, exactly in the field
a = rs.A + rs.scalar(Fraction(1, 2))
lhs = chebyshev_eval(7, a + a.inverse())
rhs = a ** 7 + a ** (-7)
print(f"\nT_7(a + 1/a) == a^7 + a^-7 exactly: {lhs == rhs}")

# ---------------------------------------------------------------------------
# solving T_N(x) = t in the bigfloat backend
# ---------------------------------------------------------------------------

rsf = make_root_system(5, "bigfloat", 192)
t = rsf.scalar(complex(1.7, 0.4))
roots = solve_chebyshev(t)
print(f"\nall solutions of T_5(x) = {t}:")
for v in roots.values:
    print(f"  x = {v},  T_5(x) = {chebyshev_eval(5, v)}")
print(f"gauge base b (principal 5th root of the larger quadratic root): {roots.base}")

"""Normalized Chebyshev polynomials of the first kind.

These are the polynomials with T_0 = 2 and T_1 = x satisfying the three-term
recurrence T_n(x) = x*T_{n-1}(x) - T_{n-2}(x), equivalently the trace
polynomials with Tr(M^n) = T_n(Tr M) for M in SL2.  They diagonalize as
T_n(a + 1/a) = a^n + a^{-n}, and at the roots of unity of a root system the
degree-N polynomial factors through the values b*A^{2k} + b^{-1}*A^{-2k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import matrices
from .errors import UnsupportedExactOperation
from .scalars import BigComplex, Scalar, nth_root, solve_quadratic


@dataclass(frozen=True)
class ChebyshevPoly:
    """Integer coefficient vector of T_n, low power first."""

    n: int
    coeffs: tuple


@lru_cache(maxsize=None)
def chebyshev_coeffs(n: int) -> ChebyshevPoly:
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    if n == 0:
        return ChebyshevPoly(0, (2,))
    if n == 1:
        return ChebyshevPoly(1, (0, 1))
    prev2 = list(chebyshev_coeffs(n - 2).coeffs)
    prev1 = list(chebyshev_coeffs(n - 1).coeffs)
    out = [0] * (n + 1)
    for i, c in enumerate(prev1):
        out[i + 1] += c
    for i, c in enumerate(prev2):
        out[i] -= c
    return ChebyshevPoly(n, tuple(out))


def chebyshev_eval(n: int, arg):
    """T_n at a scalar or a square matrix, by the three-term recurrence.

    Matrix evaluation costs n multiplications and avoids expanding the
    coefficient form.
    """
    if isinstance(arg, np.ndarray):
        if arg.ndim != 2 or arg.shape[0] != arg.shape[1]:
            raise ValueError(f"matrix argument must be square, got shape {arg.shape}")
        rs = arg.flat[0].rs
        two_id = matrices.mat_scale(rs.scalar(2), matrices.identity(rs, arg.shape[0]))
        if n == 0:
            return two_id
        prev2, prev1 = two_id, arg
        for _ in range(n - 1):
            prev2, prev1 = prev1, matrices.matmul(arg, prev1) - prev2
        return prev1
    rs = arg.rs
    if n == 0:
        return rs.scalar(2)
    prev2, prev1 = rs.scalar(2), arg
    for _ in range(n - 1):
        prev2, prev1 = prev1, arg * prev1 - prev2
    return prev1


@dataclass(frozen=True)
class ChebyshevRoots:
    """All N solutions of T_N(x) = t, plus the choices made along the way.

    ``base`` is the principal N-th root of the larger-magnitude root of
    y^2 - t*y + 1 = 0; the solution list is base*A^{2k} + base^{-1}*A^{-2k}
    for k = 1..N.  Both quadratic roots are kept so that gauge enumeration
    can revisit the choice.
    """

    values: tuple
    base: Scalar
    quadratic_roots: tuple


def solve_chebyshev(t: Scalar, N: int = None) -> ChebyshevRoots:
    """Solve T_N(x) = t in the bigfloat backend.

    The solutions are pairwise distinct iff t != +/-2; at t = +/-2 they are
    returned with multiplicity.
    """
    rs = t.rs
    if not isinstance(t, BigComplex):
        raise UnsupportedExactOperation("solving T_N(x) = t needs the bigfloat backend")
    if N is None:
        N = rs.N
    if N != rs.N:
        raise ValueError(f"N={N} does not match the root system (N={rs.N})")
    y1, y2 = solve_quadratic(rs.one, -t, rs.one)
    y = y1 if float(y1.magnitude()) >= float(y2.magnitude()) else y2
    base = nth_root(y, N)
    base_inv = base.inverse()
    values = tuple(base * rs.a_pow(2 * k) + base_inv * rs.a_pow(-2 * k) for k in range(1, N + 1))
    return ChebyshevRoots(values, base, (y1, y2))

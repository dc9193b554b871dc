"""Dense matrices over backend scalars, plus numerical-rank utilities.

Matrices are numpy object arrays whose entries are scalars of a single root
system; ``@`` works on them directly.  Rank and nullspace decisions follow a
two-stage scheme: singular values of a double-precision image of the matrix
decide the candidate nullity, every requested nullvector is then refined by
inverse iteration at full working precision and certified against the root
system's tolerance.  Ambiguous singular-value profiles or failed
certifications fall back to a full arbitrary-precision SVD.
"""

from __future__ import annotations

import numpy as np
import mpmath
from mpmath import mp

from .scalars import BigComplex, CyclotomicNumber, RootSystem, numeric_bridge

# singular values below this fraction of the largest are treated as zero in
# the double-precision prescreen; values between the two bounds are ambiguous
_PRESCREEN_CUT = 1e-9
_AMBIGUOUS_LOW = 1e-13
_AMBIGUOUS_HIGH = 1e-8


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def zeros(rs: RootSystem, n: int, m: int = None):
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    z = rs.zero
    for i in range(n):
        for j in range(m):
            out[i, j] = z
    return out


def identity(rs: RootSystem, n: int):
    out = zeros(rs, n)
    one = rs.one
    for i in range(n):
        out[i, i] = one
    return out


def scalar_matrix(s, n: int):
    out = zeros(s.rs, n)
    for i in range(n):
        out[i, i] = s
    return out


def diagonal(entries):
    n = len(entries)
    out = zeros(entries[0].rs, n)
    for i, e in enumerate(entries):
        out[i, i] = e
    return out


def freeze(mat):
    mat.flags.writeable = False
    return mat


def mat_scale(s, mat):
    n, m = mat.shape
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            out[i, j] = s * mat[i, j]
    return out


def matmul(a, b):
    """Matrix product; bigfloat entries take a single-context fast path.

    Performing the whole contraction under one working-precision block is
    about four times faster than elementwise operator dispatch and produces
    bitwise-identical results.
    """
    if isinstance(a.flat[0], CyclotomicNumber):
        return a @ b
    rs = a.flat[0].rs
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = np.empty((n, m), dtype=object)
    with mp.workprec(rs.precision_bits):
        am = [[a[i, j].mpc() for j in range(k)] for i in range(n)]
        bm = [[b[i, j].mpc() for j in range(m)] for i in range(k)]
        for i in range(n):
            ai = am[i]
            for j in range(m):
                acc = mpmath.mpc(0)
                for l in range(k):
                    acc += ai[l] * bm[l][j]
                out[i, j] = BigComplex(rs, acc.real, acc.imag)
    return out


# ---------------------------------------------------------------------------
# magnitudes and residuals
# ---------------------------------------------------------------------------

def entry_magnitude(s) -> float:
    """Float magnitude of a scalar; exact scalars are bridged at 64 bits."""
    if isinstance(s, CyclotomicNumber):
        if s.is_zero():
            return 0.0
        return float(numeric_bridge(s, 64).magnitude())
    return float(s.magnitude())


def max_magnitude_mpf(mat):
    """Largest entry magnitude as an mpf (bigfloat entries only)."""
    rs = mat.flat[0].rs
    with mp.workprec(rs.precision_bits):
        best = mp.mpf(0)
        for e in mat.flat:
            m = abs(e.mpc())
            if m > best:
                best = m
    return best


def is_zero_matrix(mat) -> bool:
    """Identically-zero test; exact in the exact backend."""
    return all(e.is_zero() for e in mat.flat)


def residual_report(mat):
    """(exactly_zero, float magnitude of the largest entry) for a defect matrix."""
    if isinstance(mat.flat[0], CyclotomicNumber):
        exact = is_zero_matrix(mat)
        return exact, 0.0 if exact else max(entry_magnitude(e) for e in mat.flat)
    m = max_magnitude_mpf(mat)
    return m == 0, float(m)


def read_scalar_matrix(mat, rs, tol=None):
    """The scalar lambda with mat = lambda * Id, or raise NonScalarChebyshev.

    The scalar is read as the mean of the diagonal, which is the least
    rounding-sensitive choice; every entry is then validated against it.
    """
    from .errors import NonScalarChebyshev
    from .scalars import approx_eq

    n = mat.shape[0]
    mean = mat[0, 0]
    for i in range(1, n):
        mean = mean + mat[i, i]
    mean = mean / rs.scalar(n)
    zero = rs.zero
    for i in range(n):
        for j in range(n):
            target = mean if i == j else zero
            if not approx_eq(mat[i, j], target, tol):
                raise NonScalarChebyshev(
                    f"entry ({i}, {j}) = {mat[i, j]} deviates from scalar structure")
    return mean


def scalar_deviation(mat, rs):
    """Float magnitude of the worst deviation of mat from (mean diagonal) * Id."""
    n = mat.shape[0]
    mean = mat[0, 0]
    for i in range(1, n):
        mean = mean + mat[i, i]
    mean = mean / rs.scalar(n)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            target = mean if i == j else rs.zero
            worst = max(worst, entry_magnitude(mat[i, j] - target))
    return mean, worst


# ---------------------------------------------------------------------------
# bridges to raw numeric types
# ---------------------------------------------------------------------------

def to_complex128(mat):
    n, m = mat.shape
    out = np.empty((n, m), dtype=np.complex128)
    for i in range(n):
        for j in range(m):
            e = mat[i, j]
            out[i, j] = complex(float(e.re), float(e.im))
    return out


def to_mp_matrix(mat):
    n, m = mat.shape
    rs = mat.flat[0].rs
    with mp.workprec(rs.precision_bits):
        out = mpmath.matrix(n, m)
        for i in range(n):
            for j in range(m):
                out[i, j] = mat[i, j].mpc()
    return out


def from_mp_vector(rs: RootSystem, vec, length):
    out = np.empty(length, dtype=object)
    with mp.workprec(rs.precision_bits):
        for i in range(length):
            z = mpmath.mpc(vec[i])
            out[i] = BigComplex(rs, z.real, z.imag)
    return out


def embed_matrix(mat, precision_bits=None):
    """Entrywise numeric bridge of an exact matrix."""
    n, m = mat.shape
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            out[i, j] = numeric_bridge(mat[i, j], precision_bits) if precision_bits \
                else numeric_bridge(mat[i, j])
    return out


# ---------------------------------------------------------------------------
# nullspace: exact backend
# ---------------------------------------------------------------------------

def exact_nullspace(mat):
    """Kernel basis over the cyclotomic field by Gaussian elimination."""
    rows, cols = mat.shape
    rs = mat.flat[0].rs
    work = [[mat[i, j] for j in range(cols)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not work[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inverse()
        work[r] = [inv * x for x in work[r]]
        for i in range(rows):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free_cols = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = np.empty(cols, dtype=object)
        for j in range(cols):
            vec[j] = rs.zero
        vec[fc] = rs.one
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -work[row_idx][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# nullspace: bigfloat backend
# ---------------------------------------------------------------------------

def _mp_svd_nullspace(mat, rel_eps, want_vectors):
    """Full-precision SVD fallback with the tolerance-scaled threshold."""
    rs = mat.flat[0].rs
    A = to_mp_matrix(mat)
    with mp.workprec(rs.precision_bits):
        U, S, V = mp.svd_c(A)
        smax = max(S[i] for i in range(len(S)))
        if smax == 0:
            nullity = mat.shape[1]
        else:
            threshold = mp.mpf(rel_eps) * smax
            nullity = sum(1 for i in range(len(S)) if S[i] < threshold)
        if not want_vectors or nullity == 0:
            return nullity, []
        cols = mat.shape[1]
        vectors = []
        for i in range(cols - nullity, cols):
            vectors.append(from_mp_vector(rs, [mp.conj(V[i, j]) for j in range(cols)], cols))
    return nullity, vectors


def _sparse_rows(mat):
    """Nonzero entries per row as (column, mpc) pairs.

    Zero detection is exact: system matrices only contain exact zeros where
    nothing was written.
    """
    rows, cols = mat.shape
    out = []
    for i in range(rows):
        entries = []
        for j in range(cols):
            e = mat[i, j]
            if e.re or e.im:
                entries.append((j, e.mpc()))
        out.append(entries)
    return out


def _sparse_normal_matrix(sprows, cols):
    """B = A^H A accumulated over the sparse rows."""
    B = mpmath.matrix(cols, cols)
    for entries in sprows:
        for c1, v1 in entries:
            v1c = mp.conj(v1)
            for c2, v2 in entries:
                B[c1, c2] = B[c1, c2] + v1c * v2
    return B


def _sparse_apply_max(sprows, v):
    """max_i |(A v)_i| over the sparse rows."""
    worst = mp.mpf(0)
    for entries in sprows:
        acc = mp.mpc(0)
        for c, a in entries:
            acc += a * v[c]
        mag = abs(acc)
        if mag > worst:
            worst = mag
    return worst


def numeric_nullspace(mat, tol=None, want_vectors=True):
    """(nullity, orthonormal nullvectors) of a bigfloat object matrix.

    Rank is decided on double-precision singular values; requested vectors
    are refined by inverse iteration on the normal equations at the root
    system's precision and certified to satisfy |A v| < rel_eps * scale
    entrywise.  Ambiguous singular-value profiles or failed certification
    fall back to the arbitrary-precision SVD.
    """
    rs = mat.flat[0].rs
    rel_eps = (tol.rel_eps if tol is not None else rs.tolerance.rel_eps)
    rows, cols = mat.shape
    A_d = to_complex128(mat)
    scale = np.max(np.abs(A_d)) if A_d.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        return _mp_svd_nullspace(mat, rel_eps, want_vectors)
    svals = np.linalg.svd(A_d / scale, compute_uv=False)
    smax = svals[0]
    ratios = svals / smax
    if any(_AMBIGUOUS_LOW < r < _AMBIGUOUS_HIGH for r in ratios):
        return _mp_svd_nullspace(mat, rel_eps, want_vectors)
    nullity = int(np.sum(ratios < _PRESCREEN_CUT))
    if nullity == 0 or not want_vectors:
        return nullity, []

    _, _, Vh = np.linalg.svd(A_d / scale, full_matrices=True)
    seeds = [Vh[idx].conj() for idx in range(cols - nullity, cols)]
    refined = []
    with mp.workprec(rs.precision_bits):
        sprows = _sparse_rows(mat)
        Bmp = _sparse_normal_matrix(sprows, cols)
        a_scale = mp.mpf(float(scale))
        floor = mp.mpf(0.5) ** (rs.precision_bits // 2)
        threshold = mp.mpf(rel_eps) * a_scale
        for seed in seeds:
            v = mpmath.matrix([mpmath.mpc(x) for x in seed])
            ok = False
            for _ in range(2):
                try:
                    v = mp.lu_solve(Bmp, v)
                except ZeroDivisionError:
                    break
                norm = mp.norm(v)
                if norm == 0:
                    break
                v = v / norm
                for w in refined:
                    proj = sum(mp.conj(w[i]) * v[i] for i in range(cols))
                    v = mpmath.matrix([v[i] - proj * w[i] for i in range(cols)])
                norm = mp.norm(v)
                if norm < floor:
                    break
                v = v / norm
                if _sparse_apply_max(sprows, v) < threshold:
                    ok = True
                    break
            if not ok:
                return _mp_svd_nullspace(mat, rel_eps, want_vectors)
            refined.append(v)
    vectors = [from_mp_vector(rs, v, cols) for v in refined]
    return nullity, vectors


def nullspace(mat, tol=None, want_vectors=True):
    """Backend dispatch for kernel computations."""
    if isinstance(mat.flat[0], CyclotomicNumber):
        basis = exact_nullspace(mat)
        return len(basis), (basis if want_vectors else [])
    return numeric_nullspace(mat, tol, want_vectors)

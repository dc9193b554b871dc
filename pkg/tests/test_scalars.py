import random
from fractions import Fraction
from math import isqrt

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinrep.errors import BackendMismatch, UnsupportedExactOperation
from skeinrep.scalars import (
    CyclotomicNumber,
    Tolerance,
    approx_eq,
    cyclotomic_polynomial,
    field_ops,
    make_root_system,
    nth_root,
    numeric_bridge,
    solve_quadratic,
)


def random_exact(rs, rng, height=9):
    coeffs = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(rs.degree)]
    return CyclotomicNumber(rs, tuple(coeffs))


# ---------------------------------------------------------------------------
# root system construction
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 6, 10, 14, 18, 22])
def test_cyclotomic_polynomial_matches_sympy(n):
    ours = cyclotomic_polynomial(n)
    theirs = sympy.Poly(sympy.cyclotomic_poly(n, sympy.Symbol("x")), sympy.Symbol("x"))
    assert list(ours) == list(reversed(theirs.all_coeffs()))


def test_n3_minimal_polynomial():
    rs = make_root_system(3)
    # x^6 - 1 factors as (x-1)(x+1)(x^2+x+1)(x^2-x+1); the primitive factor is x^2-x+1
    assert rs.modulus == (1, -1, 1)
    assert rs.degree == 2
    a = rs.A
    assert a ** 3 == rs.scalar(-1)


def test_n1_root_is_minus_one():
    rs = make_root_system(1)
    assert rs.A == rs.scalar(-1)
    assert rs.degree == 1


def test_n5_bigfloat_against_independent_evaluator():
    # cos(pi/5) = (1+sqrt5)/4 and sin(pi/5) = sqrt(10-2*sqrt5)/4, evaluated through
    # integer square roots so the oracle does not share code with the backend
    rs = make_root_system(5, "bigfloat", 128)
    digits = 50
    scale = 10 ** digits
    sqrt5 = Fraction(isqrt(5 * scale * scale), scale)
    cos_ref = (1 + sqrt5) / 4
    inner = 10 - 2 * sqrt5
    sin_ref = Fraction(isqrt(inner.numerator * scale * scale // inner.denominator), scale) / 4
    a = rs.A
    with mpmath.mp.workprec(300):
        assert abs(mpmath.mpf(a.re) - mpmath.mpf(cos_ref.numerator) / cos_ref.denominator) < mpmath.mpf(10) ** -35
        assert abs(mpmath.mpf(a.im) - mpmath.mpf(sin_ref.numerator) / sin_ref.denominator) < mpmath.mpf(10) ** -35


def test_root_property_both_backends():
    for rs in (make_root_system(7), make_root_system(7, "bigfloat", 192)):
        minus_one = rs.scalar(-1)
        assert approx_eq(rs.A ** 7, minus_one)
        assert approx_eq(rs.A ** 14, rs.one)


@pytest.mark.parametrize("bad", [0, 2, 4, -3])
def test_rejects_bad_n(bad):
    with pytest.raises(ValueError):
        make_root_system(bad)


def test_rejects_low_precision():
    with pytest.raises(ValueError):
        make_root_system(3, "bigfloat", 32)


def test_a_squared_primitive():
    for backend, prec in (("exact", None), ("bigfloat", 128)):
        rs = make_root_system(7, backend, prec)
        for k in range(1, rs.N):
            assert not approx_eq(rs.a_pow(2 * k), rs.one)
        evens = {k % rs.N for k in range(1, rs.N + 1)}
        # A^2 and A^4 generate the same cyclic group of N-th roots of unity
        square_set = [rs.a_pow(2 * k) for k in sorted(evens)]
        fourth_set = [rs.a_pow(4 * k) for k in range(1, rs.N + 1)]
        for val in fourth_set:
            assert any(approx_eq(val, w) for w in square_set)


# ---------------------------------------------------------------------------
# exact field arithmetic
# ---------------------------------------------------------------------------

def test_a_times_a_reduces_canonically():
    rs = make_root_system(3)
    prod = field_ops(rs.A, rs.A, "mul")
    # oracle: polynomial reduction of x*x modulo x^2 - x + 1
    x = sympy.Symbol("x")
    reduced = sympy.rem(x * x, x * x - x + 1, x)
    assert reduced == x - 1
    assert prod == rs.A - 1


def test_field_axioms_random():
    rs = make_root_system(5)
    rng = random.Random(42)
    for _ in range(25):
        a, b = random_exact(rs, rng), random_exact(rs, rng)
        if b.is_zero():
            continue
        assert (a + b) - b == a
        assert (a * b) / b == a
        assert field_ops(b, b, "div") == rs.one
        assert b * b.inverse() == rs.one


def test_pow_2n_is_one():
    for n in (1, 3, 5, 7):
        rs = make_root_system(n)
        assert field_ops(rs.A, 2 * n, "pow") == rs.one


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=6, max_size=6),
       st.lists(st.integers(-40, 40), min_size=6, max_size=6),
       st.lists(st.integers(-40, 40), min_size=6, max_size=6))
def test_canonical_form_association(ca, cb, cc):
    rs = make_root_system(7)
    a = CyclotomicNumber(rs, tuple(Fraction(c) for c in ca))
    b = CyclotomicNumber(rs, tuple(Fraction(c) for c in cb))
    c = CyclotomicNumber(rs, tuple(Fraction(c) for c in cc))
    assert ((a + b) + c).coeffs == (a + (b + c)).coeffs
    assert ((a * b) * c).coeffs == (a * (b * c)).coeffs


def test_division_by_zero_is_reported():
    rs = make_root_system(3)
    with pytest.raises(ZeroDivisionError):
        rs.one / rs.zero
    rsf = make_root_system(3, "bigfloat", 128)
    with pytest.raises(ZeroDivisionError):
        rsf.one / rsf.scalar(0)
    with pytest.raises(ZeroDivisionError):
        rsf.one / rsf.scalar(1e-60)


def test_backend_mixing_rejected():
    rs = make_root_system(3)
    rsf = make_root_system(3, "bigfloat", 128)
    with pytest.raises(BackendMismatch):
        rs.A + rsf.A
    with pytest.raises(BackendMismatch):
        rs.A * make_root_system(5).A


# ---------------------------------------------------------------------------
# bridging and comparison
# ---------------------------------------------------------------------------

def test_embed_a_n3():
    rs = make_root_system(3)
    z = numeric_bridge(rs.A, 128)
    # sin(pi/3) = sqrt(3)/2 through integer square roots
    digits = 40
    scale = 10 ** digits
    ref = Fraction(isqrt(3 * scale * scale), 2 * scale)
    with mpmath.mp.workprec(300):
        assert abs(mpmath.mpf(z.re) - mpmath.mpf("0.5")) < mpmath.mpf(10) ** -30
        assert abs(mpmath.mpf(z.im) - mpmath.mpf(ref.numerator) / ref.denominator) < mpmath.mpf(10) ** -30


def test_embedding_commutes_with_arithmetic():
    rs = make_root_system(5)
    rng = random.Random(7)
    prec = 192
    for _ in range(20):
        # random expression of depth <= 6 built from +, *, and powers
        vals = [random_exact(rs, rng, height=5) for _ in range(4)]
        expr_exact = (vals[0] * vals[1] + vals[2]) * vals[3] + vals[0] ** 3 - vals[2] * vals[1]
        emb = [numeric_bridge(v, prec) for v in vals]
        expr_float = (emb[0] * emb[1] + emb[2]) * emb[3] + emb[0] ** 3 - emb[2] * emb[1]
        bridged = numeric_bridge(expr_exact, prec)
        assert approx_eq(bridged, expr_float, Tolerance(2.0 ** (-prec // 2)))


def test_bridge_changes_precision_of_bigfloat():
    low = make_root_system(3, "bigfloat", 96)
    x = low.scalar(complex(0.7, -1.3)) * low.A
    lifted = numeric_bridge(x, 256)
    assert lifted.prec_bits == 256
    assert approx_eq(numeric_bridge(lifted, 96), x, Tolerance(2.0 ** -40))


def test_approx_eq_reflexive_and_threshold():
    rs = make_root_system(3, "bigfloat", 128)
    x = rs.scalar(complex(1.25, -0.5))
    assert approx_eq(x, x)
    eps = rs.tolerance.rel_eps
    one = rs.one
    with mpmath.mp.workprec(128):
        shifted = rs.scalar(mpmath.mpf(1) + 2 * mpmath.mpf(eps))
    assert not approx_eq(one, shifted)


# ---------------------------------------------------------------------------
# quadratics and roots
# ---------------------------------------------------------------------------

def test_quadratic_double_root():
    rs = make_root_system(3)
    t = rs.scalar(2)
    r1, r2 = solve_quadratic(rs.one, -t, rs.one)
    assert r1 == rs.one and r2 == rs.one


def test_quadratic_plus_minus_one():
    rs = make_root_system(3)
    r1, r2 = solve_quadratic(rs.one, rs.zero, rs.scalar(-1))
    assert {r1, r2} == {rs.one, rs.scalar(-1)}


def test_quadratic_random_bigfloat():
    rs = make_root_system(3, "bigfloat", 160)
    rng = random.Random(3)
    for _ in range(10):
        a = rs.scalar(complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)))
        b = rs.scalar(complex(rng.uniform(-2, 2), rng.uniform(-1, 1)))
        c = rs.scalar(complex(rng.uniform(-2, 2), rng.uniform(-1, 1)))
        for r in solve_quadratic(a, b, c):
            residual = a * r * r + b * r + c
            assert approx_eq(residual, rs.zero)


def test_quadratic_exact_irrational_unsupported():
    rs = make_root_system(3)
    with pytest.raises(UnsupportedExactOperation):
        solve_quadratic(rs.one, rs.zero, rs.scalar(-2))


def test_nth_root_principal():
    rs = make_root_system(5, "bigfloat", 128)
    assert approx_eq(nth_root(rs.one, 5), rs.one)
    y = rs.scalar(complex(0.3, 1.7))
    r = nth_root(y, 5)
    assert approx_eq(r ** 5, y)
    with mpmath.mp.workprec(128):
        arg = mpmath.arg(r.mpc())
        assert -mpmath.pi / 5 < arg <= mpmath.pi / 5 + mpmath.mpf(10) ** -30


def test_nth_root_exact_unsupported():
    rs = make_root_system(5)
    with pytest.raises(UnsupportedExactOperation):
        nth_root(rs.one, 5)

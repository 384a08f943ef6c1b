"""Scalar layer: cyclotomic arithmetic, q-numbers, q-binomials.

Expected values here were fixed from independent oracles: sympy's
cyclotomic_poly for Phi_N, and the division-free factorial identity
qbin(n,k)*[k]!*[n-k]! == [n]! (a polynomial identity in Z[q,q^-1],
hence valid at every root of unity) for the binomials.
"""

from fractions import Fraction
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hopfbench.cyclo import QContext, Cyc, cyclotomic_polynomial


CTX2 = QContext(2)
CTX3 = QContext(3)


def test_cyclotomic_small_frozen():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(8) == [1, 0, 0, 0, 1]          # x^4 + 1
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]        # x^4 - x^2 + 1
    assert cyclotomic_polynomial(20) == [1, 0, -1, 0, 1, 0, -1, 0, 1]


@pytest.mark.parametrize("n", list(range(1, 49)))
def test_cyclotomic_matches_sympy(n):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(n) == [int(c) for c in expected]


def test_root_of_unity_orders():
    for ctx in (CTX2, CTX3):
        z = ctx.zeta
        assert z ** ctx.order == ctx.one
        for k in range(1, ctx.order):
            assert z ** k != ctx.one, f"zeta^{k} trivial at p={ctx.p}"
        # q = zeta^2 is a primitive 2p-th root
        assert ctx.q ** (2 * ctx.p) == ctx.one
        assert ctx.q ** ctx.p == ctx.rational(-1)


def _random_scalar(ctx, rng, size=6):
    coeffs = [rng.randint(-size, size) for _ in range(ctx.phi)]
    den = rng.randint(1, size)
    return Cyc(ctx, coeffs, den)


@pytest.mark.parametrize("p", [2, 3])
def test_field_laws_bulk_seeded(p):
    # >= 10^4 randomized triples, fixed seed, exact equality.
    ctx = QContext(p)
    rng = random.Random(20260401 + p)
    for _ in range(10_000):
        a = _random_scalar(ctx, rng)
        b = _random_scalar(ctx, rng)
        c = _random_scalar(ctx, rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + ctx.zero == a
        assert a * ctx.one == a
        assert a - a == ctx.zero


coeff_strategy = st.lists(st.integers(-50, 50), min_size=4, max_size=4)


@given(coeffs=coeff_strategy, den=st.integers(1, 40))
@settings(max_examples=300, deadline=None)
def test_inverse_law_hypothesis(coeffs, den):
    a = Cyc(CTX2, coeffs, den)
    if not a:
        return
    inv = a.inv()
    assert a * inv == CTX2.one
    assert inv * a == CTX2.one


@given(coeffs=coeff_strategy, den=st.integers(1, 40))
@settings(max_examples=200, deadline=None)
def test_normalization_canonical(coeffs, den):
    a = Cyc(CTX3, coeffs, den)
    b = Cyc(CTX3, [c * 6 for c in coeffs], den * 6)
    assert a == b
    assert hash(a) == hash(b)
    assert a.d > 0


def test_q_int_frozen_values():
    # p=3, q primitive 6th root: [2] = q + q^-1 = 1, [3] = 0.
    assert CTX3.q_int(2) == CTX3.q + CTX3.q_inv
    assert CTX3.q_int(2) == CTX3.one
    assert CTX3.q_int(3) == CTX3.zero
    # p=2, q primitive 4th root: [2] = 0.
    assert CTX2.q_int(2) == CTX2.zero
    for ctx in (CTX2, CTX3):
        assert ctx.q_int(0) == ctx.zero
        assert ctx.q_int(1) == ctx.one
        assert ctx.q_int(-5) == -ctx.q_int(5)


def test_q_int_half_integer():
    # [1/2] * (q - q^-1) = q^(1/2) - q^(-1/2), through zeta directly.
    for ctx in (CTX2, CTX3):
        half = Fraction(1, 2)
        lhs = ctx.q_int(half) * ctx.qdiff
        assert lhs == ctx.zeta - ctx.zeta_pow(-1)
        assert ctx.q_int(Fraction(3, 2)) * ctx.qdiff == ctx.zeta_pow(3) - ctx.zeta_pow(-3)
    with pytest.raises(ValueError):
        CTX2.q_int(Fraction(1, 3))


@pytest.mark.parametrize("p", [2, 3])
def test_q_binomial_factorial_identity(p):
    # Division-free oracle: qbin(n,k) * [k]! * [n-k]! == [n]! identically.
    ctx = QContext(p)
    for n in range(0, 4 * p + 1):
        for k in range(0, n + 1):
            lhs = ctx.q_binomial(n, k) * ctx.q_factorial(k) * ctx.q_factorial(n - k)
            assert lhs == ctx.q_factorial(n), (n, k)


@pytest.mark.parametrize("p", [2, 3])
def test_q_binomial_symmetry_and_bounds(p):
    ctx = QContext(p)
    for n in range(0, 3 * p):
        assert ctx.q_binomial(n, -1) == ctx.zero
        assert ctx.q_binomial(n, n + 1) == ctx.zero
        for k in range(0, n + 1):
            assert ctx.q_binomial(n, k) == ctx.q_binomial(n, n - k)


def test_q_binomial_conventions_differ():
    # The balanced and one-sided conventions genuinely disagree (so the
    # convention adjudication test downstream is not vacuous).
    ctx = CTX3
    assert ctx.q_binomial(2, 1) == ctx.q + ctx.q_inv
    assert ctx.q_binomial_onesided(2, 1) == ctx.one + ctx.q
    assert ctx.q_binomial(2, 1) != ctx.q_binomial_onesided(2, 1)


def test_inverse_of_qdiff():
    for ctx in (CTX2, CTX3):
        assert ctx.qdiff * ctx.qdiff_inv == ctx.one


def test_scalar_rendering():
    assert str(CTX2.zero) == "0"
    assert str(CTX2.one) == "1"
    assert str(CTX2.q) == "q"
    assert str(CTX2.rational(Fraction(-3, 2))) == "-3/2"
    assert str(CTX2.zeta) == "q^(1/2)"
    assert str(CTX2.one + CTX2.q) == "1 + q"
    assert str(-CTX2.q) == "-q"


def test_pow_negative_exponent():
    a = CTX3.q + CTX3.one
    assert a ** -2 == (a * a).inv()
    assert a ** 0 == CTX3.one

"""Kernel calculus: closed-form derivatives vs the coefficient oracle and
sympy, exact integrals, Taylor sandwich, and the certificate polynomials'
defining identities."""

import math
from fractions import Fraction

import pytest
import sympy

from binram.backend import Rat
from binram.exactcore import BinomialSpec, DomainError
from binram.kernel import (
    DeltaCell,
    IntegerPolynomial,
    ResourceError,
    derivative_closed_form,
    derivative_closed_form_polynomial,
    derivative_oracle,
    derivative_value,
    eval_g,
    eval_P,
    eval_P_leading,
    eval_Q,
    eval_R,
    full_integral,
    integral_from_zero,
    integrate_g_delta,
    kernel_polynomial,
    q_identity_holds,
    signed_integral_split,
    taylor_sandwich,
    verify_claim1,
)

PAIRS = [(2, 5), (3, 8), (5, 12), (6, 20), (7, 15), (10, 25), (12, 40)]


def sympy_kernel(b, n):
    z = sympy.Symbol("z")
    return z, (1 - z) ** (b - 1) * z ** (n - b)


# -- polynomial plumbing ------------------------------------------------------


def test_integer_polynomial_basics():
    p = IntegerPolynomial((1, -2, 3), scale=2)  # (1 - 2z + 3z^2)/2
    assert p.degree == 2
    assert p(Rat(1, 2)) == Rat(3, 8)
    d = p.derivative()
    assert d(Rat(1, 2)) == Rat(1, 2)  # (-2 + 6z)/2 at 1/2
    assert IntegerPolynomial((0, 0)).is_zero()
    with pytest.raises(ValueError):
        IntegerPolynomial((1,), scale=0)


@pytest.mark.parametrize("b,n", PAIRS)
def test_kernel_polynomial_matches_pointwise(b, n):
    spec = BinomialSpec(b, n)
    poly = kernel_polynomial(spec)
    for z in (Rat(0), Rat(1, 7), Rat(2, 3), Rat(1)):
        assert poly(z) == eval_g(spec, z)


def test_kernel_polynomial_cost_guard():
    with pytest.raises(ResourceError):
        kernel_polynomial(BinomialSpec(10, 61))


# -- derivatives --------------------------------------------------------------


@pytest.mark.parametrize("b,n", PAIRS)
def test_closed_form_equals_oracle_all_orders(b, n):
    spec = BinomialSpec(b, n)
    for order in range(1, min(b - 1, n - b) + 1):
        closed = derivative_closed_form_polynomial(spec, order)
        oracle = derivative_oracle(spec, order)
        for z in (Rat(1, 5), Rat(1, 2), Rat(9, 10)):
            assert closed(z) == oracle(z)


@pytest.mark.parametrize("b,n,order", [(3, 8, 1), (5, 12, 2), (6, 20, 3), (7, 15, 4)])
def test_derivative_matches_sympy(b, n, order):
    z, g = sympy_kernel(b, n)
    want = sympy.diff(g, z, order)
    pt = sympy.Rational(2, 7)
    spec = BinomialSpec(b, n)
    got = derivative_value(spec, order, Rat(2, 7))
    want_val = sympy.Rational(want.subs(z, pt))
    assert Fraction(int(got.numerator), int(got.denominator)) == Fraction(
        int(want_val.p), int(want_val.q)
    )


def test_derivative_order_guard_and_fallback():
    spec = BinomialSpec(3, 8)  # closed form admits orders 1..2
    with pytest.raises(DomainError):
        derivative_closed_form(spec, 3, Rat(1, 2))
    # derivative_value falls back to the oracle polynomial for order 3
    z, g = sympy_kernel(3, 8)
    want = sympy.Rational(sympy.diff(g, z, 3).subs(z, sympy.Rational(1, 2)))
    got = derivative_value(spec, 3, Rat(1, 2))
    assert Fraction(int(got.numerator), int(got.denominator)) == Fraction(
        int(want.p), int(want.q)
    )


# -- integration --------------------------------------------------------------


@pytest.mark.parametrize("b,n", PAIRS)
def test_full_integral_beta_value(b, n):
    spec = BinomialSpec(b, n)
    want = Fraction(math.factorial(b - 1) * math.factorial(n - b), math.factorial(n))
    got = full_integral(spec)
    assert Fraction(int(got.numerator), int(got.denominator)) == want
    assert integral_from_zero(spec, Rat(1)) == got


@pytest.mark.parametrize("b,n", [(3, 8), (5, 12), (7, 15)])
def test_integral_matches_sympy(b, n):
    z, g = sympy_kernel(b, n)
    spec = BinomialSpec(b, n)
    cell = DeltaCell.of(spec)
    want = sympy.integrate(
        g, (z, sympy.Rational(int(cell.lo.numerator), int(cell.lo.denominator)),
            sympy.Rational(int(cell.hi.numerator), int(cell.hi.denominator)))
    )
    want = sympy.Rational(want)
    got = integrate_g_delta(spec)
    assert Fraction(int(got.numerator), int(got.denominator)) == Fraction(
        int(want.p), int(want.q)
    )


def test_signed_split_consistency():
    spec = BinomialSpec(4, 11)
    u = Rat(3, 7)
    assert signed_integral_split(spec, u) == full_integral(spec) - 2 * integral_from_zero(spec, u)


def test_cell_and_grid():
    cell = DeltaCell.of(BinomialSpec(3, 10))
    assert (cell.lo, cell.hi) == (Rat(6, 10), Rat(7, 10))
    grid = cell.grid(5)
    assert grid[0] == cell.lo and grid[-1] == cell.hi and len(grid) == 5
    with pytest.raises(DomainError):
        DeltaCell.of(BinomialSpec(10, 10))


# -- Taylor sandwich ----------------------------------------------------------


@pytest.mark.parametrize("b,n", [(5, 12), (6, 20), (10, 25), (12, 40)])
def test_taylor_sandwich_brackets_kernel(b, n):
    spec = BinomialSpec(b, n)
    sw = taylor_sandwich(spec)
    cell = DeltaCell.of(spec)
    for z in cell.grid(9):
        g = eval_g(spec, z)
        assert sw.lower(z) <= g <= sw.upper(z)


def test_taylor_sandwich_known_edge_at_b5():
    """At b = 5 the fourth derivative is not monotone on the cell for large n
    (it dips below its left-endpoint value), so the stated lower bound fails
    there; pinned as an exact fact, cross-checked with sympy above."""
    spec = BinomialSpec(5, 56)
    d4_lo = derivative_value(spec, 4, DeltaCell.of(spec).lo)
    d4_dip = derivative_value(spec, 4, Rat(143, 160))  # interior point
    assert d4_dip < d4_lo  # non-monotone fourth derivative
    sw = taylor_sandwich(spec)
    z = Rat(201, 224)
    assert not sw.lower(z) <= eval_g(spec, z)  # the stated bound breaks


def test_taylor_sandwich_domain_guard():
    with pytest.raises(DomainError):
        taylor_sandwich(BinomialSpec(4, 12))
    with pytest.raises(DomainError):
        taylor_sandwich(BinomialSpec(6, 11))


# -- certificate polynomials --------------------------------------------------


def test_eval_P_sample_value():
    # hand-expanded from the quintic: independent recomputation at (5, 17)
    b, n = 5, 17
    want = (
        12 * b**5 - 16 * b**4 * n + 64 * b**4 + 4 * b**3 * n**2 - 71 * b**3 * n
        + 138 * b**3 + 16 * b**2 * n**2 - 112 * b**2 * n + 156 * b**2
        + 12 * b * n**2 - 105 * b * n + 94 * b + 24 * n**2 - 48 * n + 24
    )
    assert eval_P(5, 17) == want
    assert eval_P(5, 17) == eval_P_leading(5, 17) + eval_R(5, 17)


@pytest.mark.parametrize("b,n", [(6, 20), (7, 22), (8, 26), (10, 33), (12, 40)])
def test_P_defining_identity(b, n):
    """P is defined so that, with x = (b+1)/n,

        P / (24 n^6) = x^(b-4) (1-x)^(n-b-2)
            * [x^b (1-x)^(n-b) - b * sum_{l=0..3} d^l g(1-x) / ((l+1)! n^(l+1))]

    checked exactly against the independent derivative path."""
    spec = BinomialSpec(b, n)
    x = Rat(b + 1, n)
    s = Rat(0)
    for l in range(4):
        s += derivative_value(spec, l, 1 - x) / (math.factorial(l + 1) * n ** (l + 1))
    lead = x**b * (1 - x) ** (n - b)
    rhs = 24 * n**6 * x ** (4 - b) * (1 - x) ** (b + 2 - n) * (lead - b * s)
    assert Rat(eval_P(b, n)) == rhs


@pytest.mark.parametrize("b,n", [(6, 20), (8, 26), (10, 33), (12, 40), (15, 60)])
def test_Q_identity(b, n):
    assert q_identity_holds(BinomialSpec(b, n))
    spec = BinomialSpec(b, n)
    x = Rat(b + 1, n)
    assert derivative_value(spec, 4, 1 - x) == x ** (b - 5) * (1 - x) ** (
        n - b - 4
    ) * eval_Q(spec)


# -- integral identity suite --------------------------------------------------


def test_verify_claim1_small_sweep():
    for n in range(2, 26):
        for b in range(1, n):
            assert verify_claim1(BinomialSpec(b, n)), (b, n)


def test_verify_claim1_edge_b_equals_n_minus_1():
    assert verify_claim1(BinomialSpec(9, 10))
    with pytest.raises(DomainError):
        verify_claim1(BinomialSpec(10, 10))

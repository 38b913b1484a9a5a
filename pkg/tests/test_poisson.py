"""Poisson enclosures: exact weights, mpmath cross-checks of the enclosures,
factorial-moment identities, and the sharpness of the beta upper bound."""

import math
from fractions import Fraction

import mpmath
import pytest

from binram.backend import Rat
from binram.exactcore import DomainError
from binram.poisson import (
    alpha_beta,
    beta_sharpness_identity,
    beta_upper_bound,
    factorial_moment_identity,
    falling_factorial_sum,
    pmf_weight,
    poisson_tail,
    summarize,
    tail_weight,
    truncated_moment,
    y_poisson,
)
from binram.precision import PrecisionPolicy

POLICY = PrecisionPolicy(digits=40, max_escalations=2)


def mp_contains(interval, mp_value, slack="1e-35"):
    v_lo = mp_value - mpmath.mpf(slack)
    v_hi = mp_value + mpmath.mpf(slack)
    lo = mpmath.mpf(int(interval.lo.numerator)) / int(interval.lo.denominator)
    hi = mpmath.mpf(int(interval.hi.numerator)) / int(interval.hi.denominator)
    return lo <= v_hi and v_lo <= hi


def test_tail_weight_exact_values():
    # sum_{i<b} b**i / i!
    assert tail_weight(1) == 1
    assert tail_weight(2) == 3  # 1 + 2
    assert tail_weight(3) == Rat(17, 2)  # 1 + 3 + 9/2
    assert tail_weight(4) == Fraction(
        sum(Fraction(4**i, math.factorial(i)) for i in range(4))
    )
    with pytest.raises(DomainError):
        tail_weight(0)


def test_pmf_weight_exact():
    for b in (1, 2, 5, 9):
        assert pmf_weight(b) == Rat(b**b, math.factorial(b))


@pytest.mark.parametrize("b", [1, 2, 5, 20, 60])
def test_poisson_tail_vs_mpmath(b):
    with mpmath.workdps(80):
        want = sum(
            mpmath.exp(-b) * mpmath.mpf(b) ** i / mpmath.factorial(i)
            for i in range(b)
        )
        assert mp_contains(poisson_tail(b, POLICY), want)


def test_y_at_1_is_e_over_2_minus_1():
    with mpmath.workdps(80):
        assert mp_contains(y_poisson(1, POLICY), mpmath.e / 2 - 1)


@pytest.mark.parametrize("b", [1, 2, 3, 10, 40])
def test_y_in_classical_range(b):
    y = y_poisson(b, POLICY)
    assert Rat(1, 3) < y.lo and y.hi < Rat(1, 2)


def test_y_strictly_decreasing_sample():
    prev = y_poisson(1, POLICY)
    for b in range(2, 12):
        cur = y_poisson(b, POLICY)
        assert cur.hi < prev.lo
        prev = cur


def test_factorial_moment_identity():
    for b in range(1, 30):
        for s in range(1, b + 1):
            assert factorial_moment_identity(b, s)
    with pytest.raises(DomainError):
        factorial_moment_identity(3, 4)


@pytest.mark.parametrize("b,k,which", [(3, 1, "h1"), (5, 2, "h1"), (5, 2, "h2"), (8, 3, "h2")])
def test_truncated_moment_vs_mpmath(b, k, which):
    with mpmath.workdps(80):
        want = mpmath.mpf(0)
        for i in range(b):
            term = mpmath.exp(-b) * mpmath.mpf(b) ** i / mpmath.factorial(i)
            term *= mpmath.mpf(b - i) ** k
            if which == "h2":
                term *= i
            want += term
        assert mp_contains(truncated_moment(b, k, which, POLICY), want)


def test_falling_factorial_sum():
    for k in range(0, 12):
        for s in range(0, k):
            assert falling_factorial_sum(k, s) == 0
        assert falling_factorial_sum(k, k) == (-1) ** k * math.factorial(k)
    with pytest.raises(DomainError):
        falling_factorial_sum(-1, 0)


def test_beta_sharpness_identity():
    assert beta_sharpness_identity()


def test_beta_upper_bound_value():
    ub = beta_upper_bound(40)
    # -1 + 4/sqrt(21(368 - 135 e)) = -0.1407483955646...
    assert Rat(-14075, 10**5) < ub.lo and ub.hi < Rat(-14074, 10**5)


def test_beta_at_1_attains_bound_numerically():
    _, beta = alpha_beta(1, POLICY)
    ub = beta_upper_bound(40)
    # the enclosures must overlap (equality case) and agree to ~30 digits
    assert beta.lo <= ub.hi and ub.lo <= beta.hi
    assert abs(beta.lo - ub.lo) < Rat(1, 10**30)


def test_beta_strictly_below_bound_for_larger_b():
    ub = beta_upper_bound(40)
    for b in (2, 3, 10):
        _, beta = alpha_beta(b, POLICY)
        assert beta.hi < ub.lo


def test_alpha_beta_ranges_and_monotonicity():
    prev_a = prev_b = None
    for b in range(1, 9):
        alpha, beta = alpha_beta(b, POLICY)
        assert Rat(2, 21) <= alpha.lo and alpha.hi <= Rat(8, 45)
        assert Rat(-1, 3) < beta.lo and beta.hi < 0
        if prev_a is not None:
            assert alpha.hi < prev_a.lo  # strictly decreasing
            assert beta.hi < prev_b.lo
        prev_a, prev_b = alpha, beta


def test_summarize_consistency():
    s = summarize(4, POLICY)
    assert s.b == 4
    assert s.tail.lo > 0 and s.pmf_at_b.lo > 0
    assert Rat(1, 3) < s.y.lo < s.y.hi < Rat(1, 2)

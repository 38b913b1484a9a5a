"""Rigorous enclosures for Poisson quantities at integer mean b.

Every Poisson probability below factors as (exact rational) * exp(-b), so the
only approximate ingredient is the enclosure of exp(-b), obtained by powering
a certified 1/e bracket.  All downstream intervals are therefore rigorous:
the true real value lies between the rational endpoints.

The headline quantity is y(b) = (1/2 - P(N < b)) / P(N = b) for N ~ Poisson(b),
classically confined to (1/3, 1/2) and decreasing, together with the
correction coefficients alpha(b) and beta(b) of its 1/b expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .backend import Rat
from .exactcore import DomainError
from .intervals import IntervalValue, exp_neg_enclosure, sqrt_enclosure, terms_for_digits
from .precision import DEFAULT_POLICY, PrecisionError, PrecisionPolicy


def _digits_of_magnitude(b: int) -> int:
    """Upper bound on -log10(exp(-b)), used to pick absolute rounding grids."""
    return (b * 4343) // 10000 + 2


def _exp_neg_interval(b: int, digits: int) -> IntervalValue:
    """Enclosure of exp(-b) with relative width about 10**-digits."""
    terms = terms_for_digits(digits)
    raw = exp_neg_enclosure(b, terms)
    return raw.round_out(digits + _digits_of_magnitude(b) + 10)


def tail_weight(b: int) -> "Rat":
    """Exact rational S with P(N < b) = S * exp(-b): S = sum_{i<b} b**i / i!."""
    if b < 1:
        raise DomainError("b must be >= 1")
    fact_top = math.factorial(b - 1)
    acc = 0
    power = fact_top  # b**i * (b-1)! / i!
    for i in range(b):
        if i > 0:
            power = power * b // i
        acc += power
    return Rat(acc, fact_top)


def pmf_weight(b: int) -> "Rat":
    """Exact rational with P(N = b) = (b**b / b!) * exp(-b)."""
    return Rat(b**b, math.factorial(b))


def poisson_tail(b: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> IntervalValue:
    """Enclosure of P(N < b) with width at most 10**-policy.digits."""
    target = Rat(1, 10**policy.digits)
    weight = tail_weight(b)
    for digits in policy.escalation_digits():
        enc = (weight * _exp_neg_interval(b, digits)).round_out(digits)
        if enc.width() <= target:
            return enc
    raise PrecisionError(f"tail enclosure for b={b} did not reach width {target}")


def y_poisson(b: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> IntervalValue:
    """Enclosure of y(b) = (1/2 - P(N < b)) / P(N = b)."""
    target = Rat(1, 10**policy.digits)
    s = tail_weight(b)
    t = pmf_weight(b)
    for digits in policy.escalation_digits():
        e = _exp_neg_interval(b, digits)
        y = ((Rat(1, 2) - s * e) / (t * e)).round_out(digits)
        if y.width() <= target:
            return y
    raise PrecisionError(f"y enclosure for b={b} did not reach width {target}")


def alpha_beta(b: int, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Enclosures of the expansion coefficients alpha(b), beta(b):

        y = 1/3 + 4 / (135 (b + alpha)),
        y = 1/3 + 4/(135 b) - 8 / (2835 (b + beta)**2).

    The squared denominator is the form under which the classical sharp bound
    -1 + 4/sqrt(21(368 - 135e)) is attained exactly at b = 1; the frequently
    reprinted variant with denominator (b**2 + beta) leaves beta unbounded
    below and is incompatible with that bound from b = 2 on.

    Escalates precision until neither defining denominator interval straddles
    zero; raises PrecisionError if the budget runs out first.
    """
    last_exc = None
    for digits in policy.escalation_digits():
        sub = PrecisionPolicy(
            digits=digits, max_escalations=1, guard_exponent=policy.guard_exponent
        )
        y = y_poisson(b, sub)
        try:
            alpha = 4 / ((y - Rat(1, 3)) * 135) - b
            squared = 8 / ((Rat(4, 135 * b) + Rat(1, 3) - y) * 2835)
        except ZeroDivisionError as exc:
            last_exc = exc
            continue
        if not squared.lo > 0:
            last_exc = None
            continue
        root = IntervalValue(
            sqrt_enclosure(squared.lo, digits).lo,
            sqrt_enclosure(squared.hi, digits).hi,
        )
        beta = root - b
        return alpha.round_out(digits), beta.round_out(digits)
    raise PrecisionError(f"alpha/beta for b={b}: denominator stayed inconclusive") from last_exc


def beta_sharpness_identity() -> bool:
    """Exact algebraic fact behind beta(1) attaining the upper bound:
    with y(1) = e/2 - 1, the defining quantity 4/135 + 1/3 - y(1) equals
    (368 - 135e)/270, so beta(1) = -1 + 4/sqrt(21(368 - 135e)) identically.
    Verified on the rational coefficients (the e terms match by construction).
    """
    # y(1) = (1/2 - S e^-1)/(T e^-1) with S = tail_weight(1), T = pmf_weight(1)
    if not (tail_weight(1) == 1 and pmf_weight(1) == 1):
        return False
    # 4/135 + 1/3 - (e/2 - 1) = (368 - 135e)/270: compare rational parts
    const_part = Rat(4, 135) + Rat(1, 3) + 1
    return const_part == Rat(368, 270) and Rat(1, 2) == Rat(135, 270)


def beta_upper_bound(digits: int = 40) -> IntervalValue:
    """Enclosure of the sharp upper bound -1 + 4/sqrt(21(368 - 135e)) for
    beta(b); beta(1) attains it exactly."""
    from .intervals import e_enclosure

    e = e_enclosure(terms_for_digits(digits))
    inner = (e * (-135) + 368) * 21
    if not inner.lo > 0:
        raise PrecisionError("e enclosure too wide for the beta bound")
    root = IntervalValue(
        sqrt_enclosure(inner.lo, digits).lo, sqrt_enclosure(inner.hi, digits).hi
    )
    return 4 * root.reciprocal() - 1


@dataclass(frozen=True)
class PoissonSummary:
    """All enclosed quantities for one b."""

    b: int
    tail: IntervalValue
    pmf_at_b: IntervalValue
    y: IntervalValue
    alpha: IntervalValue
    beta: IntervalValue


def summarize(b: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> PoissonSummary:
    digits = policy.digits
    e = _exp_neg_interval(b, digits)
    tail = (tail_weight(b) * e).round_out(digits)
    pmf = (pmf_weight(b) * e).round_out(digits)
    y = y_poisson(b, policy)
    alpha, beta = alpha_beta(b, policy)
    return PoissonSummary(b=b, tail=tail, pmf_at_b=pmf, y=y, alpha=alpha, beta=beta)


# -- exact factorial-moment identities ---------------------------------------


def factorial_moment_identity(b: int, s: int) -> bool:
    """Exact check of E[N^(s) 1(N<b)] = b**s P(N < b-s), comparing the rational
    weights after the common exp(-b) factor cancels."""
    if not (1 <= s <= b):
        raise DomainError("need 1 <= s <= b")
    fact_top = math.factorial(b - 1)
    lhs = 0
    power = fact_top  # b**i * (b-1)! / i!
    for i in range(b):
        if i > 0:
            power = power * b // i
        if i >= s:
            lhs += power * _falling(i, s)
    rhs = 0
    power = fact_top
    for i in range(b - s):
        if i > 0:
            power = power * b // i
        rhs += power
    rhs *= b**s
    return lhs == rhs


def _falling(x: int, s: int) -> int:
    out = 1
    for j in range(s):
        out *= x - j
    return out


def truncated_moment(
    b: int,
    k: int,
    which: str = "h1",
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> IntervalValue:
    """Enclosure of the truncated moment

        h1: E[(b-N)**k 1(N<b)]      h2: E[N (b-N)**k 1(N<b)]

    as an exact rational weight times the exp(-b) enclosure.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if which not in ("h1", "h2"):
        raise DomainError("which must be 'h1' or 'h2'")
    fact_top = math.factorial(b - 1)
    acc = 0
    power = fact_top
    for i in range(b):
        if i > 0:
            power = power * b // i
        term = power * (b - i) ** k
        if which == "h2":
            term *= i
        acc += term
    weight = Rat(acc, fact_top)
    digits = policy.digits
    return (weight * _exp_neg_interval(b, digits)).round_out(digits)


def falling_factorial_sum(k: int, s: int) -> int:
    """Exact sum_{i=0}^{k} (-1)**i C(k, i) i^(s); vanishes whenever s < k."""
    if k < 0 or s < 0:
        raise DomainError("k and s must be >= 0")
    return sum((-1) ** i * math.comb(k, i) * _falling(i, s) for i in range(k + 1))

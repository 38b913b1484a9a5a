"""Exact rational binomial quantities.

Everything here is computed over Bin(n, b/n) in exact integer arithmetic:
probabilities are integers scaled by n**n, so no rounding occurs anywhere.
The central object is the Ramanujan-type ratio

    z(b, n) = (1/2 - P(X < b)) / P(X = b),      X ~ Bin(n, b/n),

whose monotonicity in b and n is what the certificate suites verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .backend import Rat


class DomainError(ValueError):
    """Input outside an operation's stated domain."""


@dataclass(frozen=True)
class BinomialSpec:
    """The pair (b, n) identifying X ~ Bin(n, b/n) with 1 <= b <= n."""

    b: int
    n: int

    def __post_init__(self):
        if not (1 <= self.b <= self.n):
            raise DomainError(f"need 1 <= b <= n, got b={self.b}, n={self.n}")


@dataclass(frozen=True)
class TailValue:
    """Exact tail p = P(X < b), pmf at b, and the ratio z for one spec."""

    spec: BinomialSpec
    p: object
    pmf_at_b: object
    z: object


def _pmf_numerators(b: int, n: int, upto: int) -> list:
    """Integers N_i = C(n, i) * b**i * (n-b)**(n-i) for i = 0..upto.

    pmf(i) = N_i / n**n.  Binomial coefficients advance by the ratio
    recurrence, so the whole prefix costs O(upto) big-int multiplications.
    """
    c = 1  # C(n, i)
    out = []
    for i in range(upto + 1):
        out.append(c * b**i * (n - b) ** (n - i))
        c = c * (n - i) // (i + 1)
    return out


def exact_pmf(spec: BinomialSpec, i: int):
    """Exact P(X = i) as a rational."""
    if not (0 <= i <= spec.n):
        raise DomainError(f"pmf index {i} outside 0..{spec.n}")
    b, n = spec.b, spec.n
    return Rat(math.comb(n, i) * b**i * (n - b) ** (n - i), n**n)


def tail_numerator(spec: BinomialSpec) -> int:
    """Integer T with P(X < b) = T / n**n."""
    b, n = spec.b, spec.n
    return sum(_pmf_numerators(b, n, b - 1))


def tail_p(spec: BinomialSpec):
    """Exact P(X < b)."""
    return Rat(tail_numerator(spec), spec.n**spec.n)


def tail_value(spec: BinomialSpec) -> TailValue:
    """Tail, pmf at b and z for one spec, sharing the pmf prefix."""
    b, n = spec.b, spec.n
    nums = _pmf_numerators(b, n, b)
    t = sum(nums[:b])
    scale = n**n
    p = Rat(t, scale)
    pmf = Rat(nums[b], scale)
    z = Rat(scale - 2 * t, 2 * nums[b])
    return TailValue(spec=spec, p=p, pmf_at_b=pmf, z=z)


def ramanujan_z(spec: BinomialSpec):
    """Exact z(b, n) = (1/2 - P(X < b)) / P(X = b)."""
    return tail_value(spec).z


def median_binomial(spec: BinomialSpec) -> int:
    """Smallest m with P(X <= m) >= 1/2 (always equals b for Bin(n, b/n))."""
    b, n = spec.b, spec.n
    scale = n**n
    acc = 0
    c = 1
    for i in range(n + 1):
        acc += c * b**i * (n - b) ** (n - i)
        if 2 * acc >= scale:
            return i
        c = c * (n - i) // (i + 1)
    raise AssertionError("cdf never reached 1/2")  # pragma: no cover


def p_diff_sign(b: int, n: int) -> int:
    """Exact sign of P(X' < b+1) - P(X < b) with X' ~ Bin(n, (b+1)/n).

    The sign flips at n = 3b + 2: +1 for n >= 3b+2, -1 for n <= 3b+1
    (verified exhaustively by the scan suites; this just computes the sign).
    """
    if not (1 <= b < n):
        raise DomainError(f"need 1 <= b < n, got b={b}, n={n}")
    hi = tail_numerator(BinomialSpec(b + 1, n))
    lo = tail_numerator(BinomialSpec(b, n))
    return (hi > lo) - (hi < lo)


def z_symmetry_check(b: int, n: int) -> bool:
    """Exact check of z(b, n) + z(n-b, n) = 1."""
    if not (1 <= b <= n - 1):
        raise DomainError(f"need 1 <= b <= n-1, got b={b}, n={n}")
    return ramanujan_z(BinomialSpec(b, n)) + ramanujan_z(BinomialSpec(n - b, n)) == 1

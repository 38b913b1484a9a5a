"""The integrand kernel (1-z)^(b-1) * z^(n-b) and its exact calculus.

Consecutive binomial tail differences reduce to exact integrals of this
kernel over the cell [1-(b+1)/n, 1-b/n].  This module provides:

* exact evaluation and exact polynomial integration,
* the closed-form derivative of any admissible order, together with an
  independent oracle (coefficient-wise differentiation of the expanded
  integer polynomial) used to cross-check it,
* third-order Taylor bounds with fourth-derivative remainder brackets,
* the certificate polynomials P, Q, R whose signs drive the finite-range
  inequality certificates,
* exact verification of the four tail/integral identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .backend import Rat, as_rat
from .exactcore import BinomialSpec, DomainError, ramanujan_z, tail_p


class ResourceError(RuntimeError):
    """A cost guard was exceeded."""


ORACLE_MAX_N = 60  # cost guard for full polynomial expansion


@dataclass(frozen=True)
class IntegerPolynomial:
    """Dense polynomial sum(coeffs[k] * z**k) / scale with integer coeffs."""

    coeffs: tuple
    scale: int = 1

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return -1  # zero polynomial

    def __call__(self, z):
        z = as_rat(z)
        acc = Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc / self.scale

    def derivative(self) -> "IntegerPolynomial":
        if len(self.coeffs) <= 1:
            return IntegerPolynomial((0,), self.scale)
        d = tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1)
        return IntegerPolynomial(d, self.scale)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@dataclass(frozen=True)
class DeltaCell:
    """The integration cell [1-(b+1)/n, 1-b/n]; width exactly 1/n."""

    lo: object
    hi: object

    @classmethod
    def of(cls, spec: BinomialSpec) -> "DeltaCell":
        if spec.b >= spec.n:
            raise DomainError("cell degenerates for b = n")
        n = spec.n
        return cls(lo=Rat(n - spec.b - 1, n), hi=Rat(n - spec.b, n))

    def grid(self, points: int = 5) -> list:
        """Uniform rational grid with the endpoints included."""
        if points < 2:
            raise ValueError("need at least 2 grid points")
        lo, hi = as_rat(self.lo), as_rat(self.hi)
        step = (hi - lo) / (points - 1)
        return [lo + j * step for j in range(points - 1)] + [hi]


def eval_g(spec: BinomialSpec, z):
    """Exact (1-z)**(b-1) * z**(n-b)."""
    z = as_rat(z)
    if not (0 <= z <= 1):
        raise DomainError("z outside [0, 1]")
    return (1 - z) ** (spec.b - 1) * z ** (spec.n - spec.b)


def _falling(x: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= x - j
    return out


def _closed_form_inner_coeffs(spec: BinomialSpec, order: int) -> list:
    """Coefficients of z**(order-i), i = 0..order, in the derivative formula."""
    b, n = spec.b, spec.n
    out = []
    for i in range(order + 1):
        c = (
            math.comb(order, i)
            * (-1) ** (order - i)
            * _falling(n - 1 - i, order - i)
            * _falling(n - b, i)
        )
        out.append(c)
    return out


def derivative_closed_form(spec: BinomialSpec, order: int, z):
    """Exact order-th derivative of the kernel via the closed-form sum.

    Admissible orders are 1..min(b-1, n-b); order 0 is accepted as the kernel
    itself for a uniform interface.
    """
    if order == 0:
        return eval_g(spec, z)
    b, n = spec.b, spec.n
    if not (1 <= order <= min(b - 1, n - b)):
        raise DomainError(
            f"order {order} outside 1..min(b-1, n-b) = {min(b - 1, n - b)}"
        )
    z = as_rat(z)
    if not (0 <= z <= 1):
        raise DomainError("z outside [0, 1]")
    inner = Rat(0)
    for i, c in enumerate(_closed_form_inner_coeffs(spec, order)):
        inner += c * z ** (order - i)
    return (1 - z) ** (b - 1 - order) * z ** (n - b - order) * inner


def kernel_polynomial(spec: BinomialSpec) -> IntegerPolynomial:
    """The kernel expanded as an integer polynomial in z."""
    b, n = spec.b, spec.n
    if n > ORACLE_MAX_N:
        raise ResourceError(f"polynomial expansion guarded at n <= {ORACLE_MAX_N}")
    coeffs = [0] * (n if b > 1 else n - b + 1)
    for j in range(b):
        coeffs[n - b + j] = (-1) ** j * math.comb(b - 1, j)
    return IntegerPolynomial(tuple(coeffs))


def derivative_oracle(spec: BinomialSpec, order: int) -> IntegerPolynomial:
    """Independent derivative: expand, then differentiate coefficient-wise."""
    if order < 0:
        raise DomainError("order must be >= 0")
    poly = kernel_polynomial(spec)
    for _ in range(order):
        poly = poly.derivative()
    return poly


def derivative_closed_form_polynomial(spec: BinomialSpec, order: int) -> IntegerPolynomial:
    """The closed-form derivative expanded to coefficients, for exact comparison."""
    b, n = spec.b, spec.n
    if not (1 <= order <= min(b - 1, n - b)):
        raise DomainError(
            f"order {order} outside 1..min(b-1, n-b) = {min(b - 1, n - b)}"
        )
    inner = _closed_form_inner_coeffs(spec, order)  # coeff of z**(order-i)
    # multiply (1-z)**(b-1-order) * z**(n-b-order) * inner
    out = [0] * (n - order)
    for j in range(b - order):
        binom = (-1) ** j * math.comb(b - 1 - order, j)
        for i, c in enumerate(inner):
            out[(n - b - order) + j + (order - i)] += binom * c
    return IntegerPolynomial(tuple(out))


def derivative_value(spec: BinomialSpec, order: int, z):
    """Order-th derivative at z; falls back to the oracle polynomial when the
    closed form's order guard does not admit the requested order."""
    if order == 0 or 1 <= order <= min(spec.b - 1, spec.n - spec.b):
        return derivative_closed_form(spec, order, z)
    return derivative_oracle(spec, order)(z)


# -- exact integration ------------------------------------------------------


def integral_from_zero(spec: BinomialSpec, u):
    """Exact integral of the kernel over [0, u]."""
    u = as_rat(u)
    if not (0 <= u <= 1):
        raise DomainError("upper limit outside [0, 1]")
    b, n = spec.b, spec.n
    acc = Rat(0)
    for j in range(b):
        k = n - b + j + 1
        acc += Rat((-1) ** j * math.comb(b - 1, j), k) * u**k
    return acc


def full_integral(spec: BinomialSpec):
    """Exact integral over [0, 1]; equals (b-1)! (n-b)! / n!."""
    b, n = spec.b, spec.n
    return Rat(math.factorial(b - 1) * math.factorial(n - b), math.factorial(n))


def integrate_g_delta(spec: BinomialSpec):
    """Exact integral of the kernel over its cell [1-(b+1)/n, 1-b/n]."""
    cell = DeltaCell.of(spec)
    return integral_from_zero(spec, cell.hi) - integral_from_zero(spec, cell.lo)


def signed_integral_split(spec: BinomialSpec, u):
    """Exact value of [int_u^1 - int_0^u] kernel dz = full - 2 * int_0^u."""
    return full_integral(spec) - 2 * integral_from_zero(spec, u)


# -- Taylor bounds ----------------------------------------------------------


@dataclass(frozen=True)
class TaylorSandwich:
    """Cubic Taylor polynomial at the cell's left endpoint plus a
    fourth-derivative bracket valid across the cell."""

    spec: BinomialSpec
    z0: object
    cubic_coeffs: tuple  # c_l = (d^l g)(z0) / l!,  l = 0..3
    d4_minus: object
    d4_plus: object

    def cubic(self, z):
        dz = as_rat(z) - self.z0
        acc = Rat(0)
        for c in reversed(self.cubic_coeffs):
            acc = acc * dz + c
        return acc

    def lower(self, z):
        dz = as_rat(z) - self.z0
        return self.cubic(z) + dz**4 * self.d4_minus / 24

    def upper(self, z):
        dz = as_rat(z) - self.z0
        return self.cubic(z) + dz**4 * self.d4_plus / 24


def taylor_sandwich(spec: BinomialSpec) -> TaylorSandwich:
    """Pointwise bounds on the kernel over its cell, stated for 5 <= b <= n/2.

    The bracket relies on the fourth derivative increasing across the cell.
    That premise is exactly true for b >= 6 on the ranges exercised here, but
    fails at the boundary b = 5 once n >= 48: the fourth derivative dips
    slightly below its left-endpoint value, and from n = 56 the lower bound
    is violated by the kernel itself (relative error ~1e-9).  Callers needing
    a rigorous lower bound at b = 5 must use a different argument.
    """
    b, n = spec.b, spec.n
    if not (5 <= b and 2 * b <= n):
        raise DomainError("sandwich requires 5 <= b <= n/2")
    cell = DeltaCell.of(spec)
    z0 = cell.lo
    coeffs = tuple(
        derivative_closed_form(spec, l, z0) / math.factorial(l) for l in range(4)
    )
    return TaylorSandwich(
        spec=spec,
        z0=z0,
        cubic_coeffs=coeffs,
        d4_minus=derivative_value(spec, 4, z0),
        d4_plus=derivative_value(spec, 4, cell.hi),
    )


# -- certificate polynomials ------------------------------------------------


def eval_R(b: int, n: int) -> int:
    """Low-order part of P used in its positivity argument."""
    return 156 * b**2 + 12 * b * n**2 - 105 * b * n + 94 * b + 24 * n**2 - 48 * n + 24


def eval_P(b: int, n: int) -> int:
    """The quintic certificate polynomial P(b, n), exact integer value."""
    lead = (
        12 * b**5
        - 16 * b**4 * n
        + 64 * b**4
        + 4 * b**3 * n**2
        - 71 * b**3 * n
        + 138 * b**3
        + 16 * b**2 * n**2
        - 112 * b**2 * n
    )
    return lead + eval_R(b, n)


def eval_P_leading(b: int, n: int) -> int:
    """P minus its R-part, i.e. the terms carrying b**2 and higher powers."""
    return eval_P(b, n) - eval_R(b, n)


def eval_Q(spec: BinomialSpec):
    """The normalized fourth derivative at the cell's left endpoint:

        d4 g(1 - (b+1)/n) = x**(b-5) * (1-x)**(n-b-4) * Q,   x = (b+1)/n.
    """
    b, n = spec.b, spec.n
    if b > n - 2:
        raise DomainError("Q requires b <= n - 2")
    x = Rat(b + 1, n)
    w = 1 - x
    return (
        3 * (n - b - 1) ** 2 * x**2
        - 2 * (n - b - 1) * x * (23 * w**2 + 7 * w - 1)
        + 96 * w**3
        + 24 * w**4
    )


def q_identity_holds(spec: BinomialSpec) -> bool:
    """Exact check that Q reproduces the fourth derivative at the left endpoint."""
    b, n = spec.b, spec.n
    x = Rat(b + 1, n)
    lhs = derivative_value(spec, 4, 1 - x)
    rhs = x ** (b - 5) * (1 - x) ** (n - b - 4) * eval_Q(spec)
    return lhs == rhs


# -- integral identity suite -------------------------------------------------


def verify_claim1(spec: BinomialSpec) -> bool:
    """Exact verification of the four tail/integral identities for one (b, n):

    1. the tail as a ratio of kernel integrals,
    2. the consecutive tail difference via the cell integral,
    3. z as a normalized split integral,
    4. the consecutive z difference via split integrals.
    """
    b, n = spec.b, spec.n
    if not (1 <= b < n):
        raise DomainError("identities need 1 <= b < n")
    p_b = tail_p(spec)
    p_b1 = tail_p(BinomialSpec(b + 1, n))
    full = full_integral(spec)
    x = Rat(b + 1, n)
    y = Rat(b, n)

    ok_tail = p_b == integral_from_zero(spec, 1 - y) / full

    cell_int = integrate_g_delta(spec)
    ok_diff = p_b1 - p_b == (x**b * (1 - x) ** (n - b) - b * cell_int) / (b * full)

    split_b = signed_integral_split(spec, 1 - y)
    ok_z = ramanujan_z(spec) == Rat(1, 2) * b * split_b / (y**b * (1 - y) ** (n - b))

    split_b1 = signed_integral_split(spec, 1 - x)
    z_b = ramanujan_z(spec)
    z_b1 = ramanujan_z(BinomialSpec(b + 1, n))
    prefactor = Rat(
        n**n, 2 * (n - b) * (b + 1) ** b * (n - b - 1) ** (n - b - 1)
    )
    bracket = (
        -2 * x**b * Rat(n - b - 1, n) ** (n - b)
        + b * split_b1
        - b
        * (1 + Rat(1, b)) ** b
        * (1 - Rat(1, n - b)) ** (n - b - 1)
        * split_b
    )
    ok_zdiff = z_b1 - z_b == prefactor * bracket

    return ok_tail and ok_diff and ok_z and ok_zdiff

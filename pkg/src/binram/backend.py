"""Exact-rational backend selection.

All exact arithmetic in this package runs on arbitrary-precision rationals.
When gmpy2 is available its C-backed ``mpq``/``mpz`` types are used; otherwise
we fall back to the pure-Python ``fractions.Fraction``/``int`` pair.  The two
backends are interchangeable (same operator surface, exact semantics); only
speed differs.  Set ``BINRAM_BACKEND=fractions`` to force the fallback, e.g.
for the backend benchmark.

Results never depend on the backend: every value is an exact rational.
"""

from __future__ import annotations

import os

_requested = os.environ.get("BINRAM_BACKEND", "auto")

if _requested not in ("auto", "gmpy2", "fractions"):
    raise RuntimeError(f"unknown BINRAM_BACKEND={_requested!r}")

if _requested in ("auto", "gmpy2"):
    try:
        from gmpy2 import mpq as Rat, mpz as Int  # type: ignore

        BACKEND = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise
        from fractions import Fraction as Rat  # type: ignore

        Int = int  # type: ignore
        BACKEND = "fractions"
else:
    from fractions import Fraction as Rat  # type: ignore

    Int = int  # type: ignore
    BACKEND = "fractions"


RatLike = object  # Rat | int; kept loose, both backends interoperate with int


def as_rat(x) -> "Rat":
    """Coerce an int, backend rational, Fraction or 'p/q' string to Rat."""
    if isinstance(x, str):
        if "/" in x:
            num, den = x.split("/", 1)
            return Rat(int(num), int(den))
        return Rat(int(x))
    return Rat(x)


def num(q) -> int:
    return int(q.numerator)


def den(q) -> int:
    return int(q.denominator)


def floor_div_pow10(q, digits: int):
    """floor(q * 10**digits) as an int, exact."""
    scale = 10**digits
    return (q.numerator * scale) // q.denominator


def decimal_str(q, digits: int = 24) -> str:
    """Display-only decimal rendering of a rational, round-toward-zero."""
    q = as_rat(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scale = 10**digits
    scaled = (q.numerator * scale) // q.denominator
    whole, frac = divmod(scaled, scale)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def rat_str(q) -> str:
    """Exact 'num/den' rendering (reproduces the value bit-exactly)."""
    return f"{q.numerator}/{q.denominator}"

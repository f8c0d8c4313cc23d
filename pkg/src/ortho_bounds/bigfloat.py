"""Arbitrary-precision scalar helpers built on gmpy2 / MPFR.

Every numeric kernel in this package runs on ``gmpy2.mpfr`` values inside an
explicit precision context.  MPFR arithmetic is correctly rounded at the
context precision, which is the contract the rest of the library relies on:
a value computed at ``prec`` bits carries a relative error of at most one
ulp per operation.  Public entry points compute with a small guard margin
and round their results back to the requested precision.

Parameters such as alpha, beta and q are kept as exact rationals
(``gmpy2.mpq``) so that precision escalation can re-materialise them without
losing digits.
"""

from __future__ import annotations

import os
from fractions import Fraction

import gmpy2

DEFAULT_PREC = 256
GUARD_BITS = 64
PREC_ENV_VAR = "ORTHO_BOUNDS_PRECISION"


def default_precision() -> int:
    """Working precision in bits, overridable via ORTHO_BOUNDS_PRECISION."""
    raw = os.environ.get(PREC_ENV_VAR)
    if not raw:
        return DEFAULT_PREC
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{PREC_ENV_VAR} must be an integer, got {raw!r}") from exc
    if bits < 64:
        raise ValueError(f"{PREC_ENV_VAR} must be at least 64, got {bits}")
    return bits


def context(prec: int) -> gmpy2.context:
    """A gmpy2 context with the given mantissa precision in bits."""
    return gmpy2.context(precision=prec)


def exact_rational(value) -> gmpy2.mpq:
    """Convert a parameter token to an exact rational.

    Accepts int, Fraction, gmpy2.mpq, decimal strings ("0.55", "-1/2",
    "1e-3") and floats.  Floats are taken at their exact binary value.
    """
    if isinstance(value, gmpy2.mpq):
        return value
    if isinstance(value, (int, Fraction, gmpy2.mpfr)):
        return gmpy2.mpq(value)
    if isinstance(value, float):
        return gmpy2.mpq(Fraction(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return gmpy2.mpq(text)
        except ValueError:
            pass
        # mpq() does not parse exponent notation; Fraction does.
        return gmpy2.mpq(Fraction(text))
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def as_mpfr(value) -> gmpy2.mpfr:
    """Convert to mpfr under the active context.

    Strings, ints and Fractions go through their exact rational value so
    that e.g. "0.55" is the correctly rounded decimal at full precision
    rather than a double.
    """
    if isinstance(value, (str, int, Fraction, gmpy2.mpq)):
        return gmpy2.mpfr(exact_rational(value))
    return gmpy2.mpfr(value)


def to_mpfr(value, prec: int | None = None) -> gmpy2.mpfr:
    """Convert ``value`` to mpfr, correctly rounded at ``prec`` bits.

    With ``prec=None`` the currently active context precision is used.
    """
    if prec is None:
        return gmpy2.mpfr(value)
    with gmpy2.context(precision=prec):
        return gmpy2.mpfr(value)


def round_to(x, prec: int) -> gmpy2.mpfr:
    """Round an mpfr to ``prec`` bits (round-to-nearest)."""
    return gmpy2.round2(x, prec)


def compare_at_lower_precision(a, b) -> int:
    """Three-way compare after rounding both operands to the lower precision."""
    p = min(a.precision, b.precision)
    ra, rb = gmpy2.round2(a, p), gmpy2.round2(b, p)
    if ra < rb:
        return -1
    if ra > rb:
        return 1
    return 0


def rel_diff(a, b) -> gmpy2.mpfr:
    """|a - b| scaled by the larger magnitude; 0 when both are 0."""
    prec = 64
    for v in (a, b):
        if isinstance(v, gmpy2.mpfr):
            prec = max(prec, v.precision)
    with gmpy2.context(precision=prec + GUARD_BITS):
        a = as_mpfr(a)
        b = as_mpfr(b)
        scale = max(abs(a), abs(b))
        if scale == 0:
            return gmpy2.mpfr(0)
        return abs(a - b) / scale


def sci_str(x, sig: int = 17) -> str:
    """Scientific-notation string with ``sig`` significant digits.

    Used for all machine-readable output so that values survive a
    parse / re-emit round trip byte-identically.  mpfr inputs are used
    as-is; anything else is converted wide enough not to disturb the
    printed digits (never at the ambient precision).
    """
    if not isinstance(x, gmpy2.mpfr):
        with gmpy2.context(precision=max(4 * sig, 64)):
            x = as_mpfr(x)
    if gmpy2.is_nan(x):
        return "nan"
    if gmpy2.is_infinite(x):
        return "-inf" if x < 0 else "inf"
    digits, exp10, _ = gmpy2.digits(x, 10, sig)
    neg = digits.startswith("-")
    if neg:
        digits = digits[1:]
    if digits.strip("0") == "":
        mant = "0." + "0" * (sig - 1)
        exponent = 0
    else:
        digits = digits.ljust(sig, "0")
        mant = digits[0] + "." + digits[1:sig]
        exponent = exp10 - 1
    return f"{'-' if neg else ''}{mant}e{exponent:+03d}"

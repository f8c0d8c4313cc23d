"""Three-term recurrence machinery: monic evaluation, associated polynomials,
the mixed identity linking p_{n-m}, p_{n-1}, p_n, and the resulting inner
bounds for extreme zeros.

The associated polynomials S_m^(n) are generated, for fixed n, by

    S_m = (x - C_{n-(m-1)}) S_{m-1} - lambda_{n-(m-2)} S_{m-2},
    S_0 = 1,  S_1 = x - C_n,

so the sequence S_0, S_1, ..., S_n is itself a monic orthogonal chain whose
coefficients are those of the base family read backwards from n.  The key
identity, for 2 <= m <= n-1,

    lambda_n lambda_{n-1} ... lambda_{n-m+2} p_{n-m}(x)
        = S_{m-1}^(n)(x) p_{n-1}(x) - S_{m-2}^(n-1)(x) p_n(x),

is evaluated here with an explicit residual so callers can verify it at any
point.  When p_{n-m} and p_n are co-prime, the extreme zeros of S_{m-1}^(n)
are inner bounds for the extreme zeros of p_n.
"""

from __future__ import annotations

import warnings

import gmpy2

from .bigfloat import GUARD_BITS, as_mpfr, context, default_precision, round_to
from .errors import CommonZeroWarning
from .families import FamilySpec, recurrence_table
from .polynomials import Poly


def chain_value(cs, ls, n: int, x):
    """Monic p_n(x) by forward recurrence; assumes an active context."""
    if n == 0:
        return gmpy2.mpfr(1)
    p0 = gmpy2.mpfr(1)
    p1 = x - cs[1]
    for k in range(2, n + 1):
        p0, p1 = p1, (x - cs[k]) * p1 - ls[k] * p0
    return p1

def chain_value_and_deriv(cs, ls, n: int, x):
    """(p_n(x), p_n'(x)) by the differentiated recurrence."""
    if n == 0:
        return gmpy2.mpfr(1), gmpy2.mpfr(0)
    p0, p1 = gmpy2.mpfr(1), x - cs[1]
    d0, d1 = gmpy2.mpfr(0), gmpy2.mpfr(1)
    for k in range(2, n + 1):
        xc = x - cs[k]
        lk = ls[k]
        p2 = xc * p1 - lk * p0
        d2 = p1 + xc * d1 - lk * d0
        p0, p1, d0, d1 = p1, p2, d1, d2
    return p1, d1


def chain_value_enveloped(cs, ls, n: int, x):
    """(p_n(x), envelope) with a running magnitude bound.

    The envelope M_n satisfies M_k = |x - C_k| M_{k-1} + lambda_k M_{k-2},
    so it dominates every partial result; the accumulated rounding error of
    the evaluation is below M_n * 2^(-prec) * O(n).  Values not exceeding
    that noise floor have an undetermined sign, which matters wherever the
    polynomial nearly vanishes (e.g. at the lattice points the q-family
    zeros cluster against).
    """
    one = gmpy2.mpfr(1)
    if n == 0:
        return one, one
    p0, p1 = one, x - cs[1]
    m0, m1 = one, abs(x) + abs(cs[1])
    for k in range(2, n + 1):
        xc = x - cs[k]
        lk = ls[k]
        axc = abs(xc)
        p0, p1 = p1, xc * p1 - lk * p0
        m0, m1 = m1, axc * m1 + lk * m0
    return p1, m1


def chain_value_deriv_enveloped(cs, ls, n: int, x):
    """(p_n(x), p_n'(x), envelope); see chain_value_enveloped."""
    one = gmpy2.mpfr(1)
    if n == 0:
        return one, gmpy2.mpfr(0), one
    p0, p1 = one, x - cs[1]
    d0, d1 = gmpy2.mpfr(0), one
    m0, m1 = one, abs(x) + abs(cs[1])
    for k in range(2, n + 1):
        xc = x - cs[k]
        lk = ls[k]
        axc = abs(xc)
        p2 = xc * p1 - lk * p0
        d2 = p1 + xc * d1 - lk * d0
        m2 = axc * m1 + lk * m0
        p0, p1, d0, d1, m0, m1 = p1, p2, d1, d2, m1, m2
    return p1, d1, m1


def eval_monic(spec: FamilySpec, n: int, x, prec: int | None = None):
    """Monic p_n(x) from p_0 = 1, p_1 = x - C_1."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    prec = prec or default_precision()
    cs, ls = recurrence_table(spec, max(n, 1), prec)
    with context(prec + GUARD_BITS):
        value = chain_value(cs, ls, n, as_mpfr(x))
    return round_to(value, prec)


def associated_coeff_arrays(spec: FamilySpec, n: int, m: int, prec: int | None = None):
    """Recurrence coefficients of the chain S_0^(n), ..., S_m^(n).

    Returns (C', L') with C'[j], L'[j] the step-j coefficients, so the
    generic chain evaluators and the zero bootstrap apply unchanged.
    """
    cs, ls = recurrence_table(spec, n, prec)
    cprime = [None] * (m + 1)
    lprime = [None] * (m + 1)
    for j in range(1, m + 1):
        cprime[j] = cs[n - j + 1]
        if j >= 2:
            lprime[j] = ls[n - j + 2]
    return tuple(cprime), tuple(lprime)


def associated_eval(spec: FamilySpec, n: int, m: int, x, prec: int | None = None):
    """Value of S_m^(n) at x."""
    _check_assoc_range(n, m)
    prec = prec or default_precision()
    cp, lp = associated_coeff_arrays(spec, n, m, prec)
    with context(prec + GUARD_BITS):
        value = chain_value(cp, lp, m, as_mpfr(x))
    return round_to(value, prec)


def associated_poly(spec: FamilySpec, n: int, m: int, prec: int | None = None) -> Poly:
    """Coefficient form of S_m^(n), built by the defining recurrence."""
    _check_assoc_range(n, m)
    prec = prec or default_precision()
    cp, lp = associated_coeff_arrays(spec, n, m, prec)
    with context(prec + GUARD_BITS):
        s_prev = Poly.constant(1)
        if m == 0:
            return s_prev
        s_cur = Poly.make([-cp[1], 1])
        for j in range(2, m + 1):
            s_next = s_cur.times_x_minus(cp[j]) - s_prev.scaled(lp[j])
            s_prev, s_cur = s_cur, s_next
    return s_cur


def _check_assoc_range(n: int, m: int) -> None:
    if not 0 <= m <= n:
        raise ValueError(f"associated degree m must be in [0, n], got m={m}, n={n}")


def beardon_residual(spec: FamilySpec, n: int, m: int, x, prec: int | None = None):
    """Defect of the mixed identity at x; zero up to rounding when it holds."""
    residual, _scale = beardon_residual_scaled(spec, n, m, x, prec)
    return residual


def beardon_residual_scaled(spec: FamilySpec, n: int, m: int, x, prec: int | None = None):
    """(residual, scale) where scale is the largest of the three products.

    The contract is |residual| <= 2^(64-prec) * scale.
    """
    if not 2 <= m <= n - 1:
        raise ValueError(f"need 2 <= m <= n-1, got m={m}, n={n}")
    prec = prec or default_precision()
    cs, ls = recurrence_table(spec, n, prec)
    with context(prec + GUARD_BITS):
        xv = as_mpfr(x)
        lam_prod = gmpy2.mpfr(1)
        for i in range(m - 1):
            lam_prod *= ls[n - i]
        # single pass collecting p_{n-m}, p_{n-1}, p_n
        p_nm = p_n1 = p_n = None
        p0, p1 = gmpy2.mpfr(1), xv - cs[1]
        values = {0: p0, 1: p1}
        for k in range(2, n + 1):
            p0, p1 = p1, (xv - cs[k]) * p1 - ls[k] * p0
            values[k] = p1
        p_nm, p_n1, p_n = values[n - m], values[n - 1], values[n]
        cp, lp = associated_coeff_arrays(spec, n, m - 1, prec)
        s_m1 = chain_value(cp, lp, m - 1, xv)
        cp2, lp2 = associated_coeff_arrays(spec, n - 1, m - 2, prec)
        s_m2 = chain_value(cp2, lp2, m - 2, xv)
        t1 = lam_prod * p_nm
        t2 = s_m1 * p_n1
        t3 = s_m2 * p_n
        residual = t1 - (t2 - t3)
        scale = max(abs(t1), abs(t2), abs(t3))
    return round_to(residual, prec), round_to(scale, prec)


def corollary_inner_bounds(spec: FamilySpec, n: int, m: int, prec: int | None = None):
    """(smallest, largest) zero of S_{m-1}^(n): inner bounds for p_n's extremes.

    Co-primality of p_{n-m} and p_n is checked numerically; if they share a
    zero the bounds stay valid but the event is reported as a warning.
    """
    if not 2 <= m <= n - 1:
        raise ValueError(f"need 2 <= m <= n-1, got m={m}, n={n}")
    prec = prec or default_precision()
    roots = associated_zeros(spec, n, m - 1, prec=prec)
    common = find_common_zeros(spec, n, n - m, prec=prec)
    if common:
        warnings.warn(
            f"p_{n} and p_{n - m} of {spec.describe()} share {len(common)} zero(s) "
            "numerically; bounds remain inner bounds",
            CommonZeroWarning,
            stacklevel=2,
        )
    return roots[0], roots[-1]


def associated_zeros(spec: FamilySpec, n: int, m: int, prec: int | None = None, rtol_bits: int = 100):
    """All m zeros of S_m^(n), certified by the interlacing bootstrap."""
    from .zeros import chain_zeros  # local import to avoid a module cycle

    _check_assoc_range(n, m)
    if m == 0:
        return []
    prec = prec or default_precision()
    cp, lp = associated_coeff_arrays(spec, n, m, prec)
    return chain_zeros(cp, lp, m, spec.support(), rtol_bits=rtol_bits, prec=prec)


def find_common_zeros(spec: FamilySpec, n_a: int, n_b: int, prec: int | None = None, rel_tol="1e-20"):
    """Zeros shared (within rel_tol, relative) by p_{n_a} and p_{n_b}."""
    from .zeros import family_zeros

    prec = prec or default_precision()
    za = family_zeros(spec, n_a, prec=prec).zeros
    zb = family_zeros(spec, n_b, prec=prec).zeros
    tol = as_mpfr(rel_tol)
    shared = []
    i = j = 0
    while i < len(za) and j < len(zb):
        a, b = za[i], zb[j]
        scale = max(abs(a), abs(b))
        if scale > 0 and abs(a - b) <= tol * scale:
            shared.append(a)
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return shared

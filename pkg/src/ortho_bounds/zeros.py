"""Certified real zeros of recurrence-defined polynomials.

The primary method is bisection on interlacing brackets, bootstrapped from
degree 1 upward: the zeros of p_{k-1} strictly separate those of p_k, so
each level supplies sign-change brackets for the next.  Eigenvalue methods
are deliberately not used here because the q-family zeros span magnitudes
far beyond what double precision eigensolvers resolve; they only appear in
the test suite as a cross-check at moderate parameters.

Three ingredients make the bracketing robust under the extreme behaviour
of the q-families:

* geometric midpoints whenever both bracket endpoints are positive (or
  both negative) and more than six orders of magnitude apart, keeping the
  iteration count logarithmic in the dynamic range;
* every sign evaluation carries a magnitude envelope (see
  ``chain_value_enveloped``); a value below its noise floor counts as
  sign-unknown and is never used to move a bracket.  Zeros of consecutive
  degrees cluster against the lattice points of the discrete weights to
  within hundreds of digits, and acting on such noise signs would
  silently misplace a zero;
* separators whose sign is unknown or inconsistent are nudged sideways in
  a growing search until a reliable point with the expected sign is found
  (the interval between two adjacent zeros of p_k always contains one).

A bracket is finished by a safeguarded Newton iteration (derivative via
the differentiated recurrence) plus two final sign probes that shrink the
certifying interval to the requested relative width.  Sign evaluations run
at twice the working precision; if a bracket still stalls, the whole
computation retries at doubled precision up to a cap.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import gmpy2
import numpy as np

from .bigfloat import GUARD_BITS, as_mpfr, context, default_precision, round_to
from .errors import OrthoBoundsError, PrecisionExhaustedError
from .families import FamilySpec, recurrence_table
from .polynomials import Poly
from .recurrence import chain_value_deriv_enveloped, chain_value_enveloped

DEFAULT_RTOL_BITS = 100  # about 1e-30 relative
_GEOMETRIC_RATIO = 10**6
_PREC_CAP = 8192


@dataclass(frozen=True)
class ZeroSet:
    """Sorted certified zeros x_1 < ... < x_n of one polynomial."""

    zeros: tuple
    n: int
    achieved_rtol: gmpy2.mpfr

    def __post_init__(self):
        if len(self.zeros) != self.n:
            raise OrthoBoundsError(f"expected {self.n} zeros, found {len(self.zeros)}")
        for a, b in zip(self.zeros, self.zeros[1:]):
            if not a < b:
                raise OrthoBoundsError("zeros are not strictly increasing")

    @property
    def smallest(self):
        return self.zeros[0]

    @property
    def largest(self):
        return self.zeros[-1]


def rtol_to_bits(rtol) -> int:
    """Conservative bit count for a relative tolerance given as a number."""
    if rtol is None:
        return DEFAULT_RTOL_BITS
    value = float(gmpy2.mpfr(rtol))
    if not 0 < value < 1:
        raise ValueError(f"rtol must be in (0, 1), got {rtol}")
    return max(8, int(math.ceil(-math.log2(value))))


def family_zeros(spec: FamilySpec, n: int, rtol=None, prec: int | None = None) -> ZeroSet:
    """All n zeros of the monic family polynomial, to relative ``rtol``."""
    if n < 1:
        raise ValueError("need n >= 1")
    prec = prec or default_precision()
    return _family_zeros_cached(spec, n, rtol_to_bits(rtol), prec)


@functools.lru_cache(maxsize=256)
def _family_zeros_cached(spec: FamilySpec, n: int, rtol_bits: int, prec: int) -> ZeroSet:
    p = max(prec, rtol_bits + 64)
    while True:
        cs, ls = recurrence_table(spec, n, p)
        try:
            zeros, achieved = _bootstrap_zeros(cs, ls, n, spec.support(), rtol_bits, pe=2 * p)
        except PrecisionExhaustedError:
            if 2 * p > max(16 * prec, _PREC_CAP):
                raise
            p *= 2
            continue
        out = tuple(round_to(z, p) for z in zeros)
        with context(p):
            achieved = gmpy2.mpfr(achieved) + gmpy2.exp2(-p + 1)
        return ZeroSet(zeros=out, n=n, achieved_rtol=achieved)


def chain_zeros(cs, ls, m: int, support, rtol_bits: int = DEFAULT_RTOL_BITS, prec: int | None = None):
    """Zeros of the degree-m member of an arbitrary monic recurrence chain.

    ``cs`` and ``ls`` are coefficient arrays indexed 1..m (2..m for ls).
    Used for the associated polynomials, which interlace level by level
    exactly like the base family.
    """
    prec = prec or default_precision()
    p = max(prec, rtol_bits + 64)
    while True:
        try:
            zeros, _ = _bootstrap_zeros(cs, ls, m, support, rtol_bits, pe=2 * p)
        except PrecisionExhaustedError:
            if 2 * p > max(16 * prec, _PREC_CAP):
                raise
            p *= 2
            continue
        return [round_to(z, p) for z in zeros]


# --------------------------------------------------------------------------
# Sign-classified evaluation
# --------------------------------------------------------------------------


class _LevelEval:
    """Evaluator for one chain level with noise-aware sign classification."""

    def __init__(self, cs, ls, k: int, pe: int):
        self.cs = cs
        self.ls = ls
        self.k = k
        self.pe = pe
        # rounding accumulates over ~3k operations; 2^(bitlen(k)+6) is a
        # generous cover for the constant in front
        self.noise_factor = gmpy2.exp2(-pe + k.bit_length() + 6)

    def value_sign(self, x):
        """(value, sign) with sign = 0 when the value is below noise."""
        v, env = chain_value_enveloped(self.cs, self.ls, self.k, x)
        return v, self._classify(v, env)

    def value_deriv_sign(self, x):
        v, d, env = chain_value_deriv_enveloped(self.cs, self.ls, self.k, x)
        return v, d, self._classify(v, env)

    def _classify(self, v, env) -> int:
        if abs(v) <= env * self.noise_factor:
            return 0
        return 1 if v > 0 else -1


# --------------------------------------------------------------------------
# Bracket refinement
# --------------------------------------------------------------------------


def _midpoint(lo, hi):
    if lo > 0 and hi > lo * _GEOMETRIC_RATIO:
        return gmpy2.sqrt(lo * hi)
    if hi < 0 and lo < hi * _GEOMETRIC_RATIO:
        return -gmpy2.sqrt(lo * hi)
    if lo == 0 and hi > 0:
        return hi / 1024
    if hi == 0 and lo < 0:
        return lo / 1024
    return (lo + hi) / 2


def _pick_certain(ev: _LevelEval, lo, hi, first):
    """A point strictly inside (lo, hi) with a reliable sign, else None.

    Tries ``first`` and then a few interior alternatives; candidates whose
    value drowns in rounding noise are skipped.
    """
    candidates = [first]
    span = hi - lo
    for frac in ("0.38196601", "0.61803399", "0.25", "0.75", "0.09", "0.91"):
        candidates.append(lo + span * gmpy2.mpfr(frac))
    for cand in candidates:
        if not lo < cand < hi:
            continue
        v, s = ev.value_sign(cand)
        if s != 0:
            return cand, v, s
    return None


def _refine(ev: _LevelEval, lo, slo, hi, shi, rtol):
    """Shrink a sign-change bracket to relative width rtol.

    ``slo``/``shi`` are the (certain, opposite) endpoint signs.  Returns
    (root, achieved_relative_width).
    """
    newton_entry = max(rtol, gmpy2.exp2(-12))
    use_newton = False
    x = fx = dx = None
    failed_probes = 0
    for _ in range(20000):
        scale = max(abs(lo), abs(hi))
        width = hi - lo
        if width <= rtol * scale:
            root = x if (x is not None and lo <= x <= hi) else (lo + hi) / 2
            return root, width / scale
        cand = None
        if use_newton and dx is not None and dx != 0:
            cand = x - fx / dx
            if not (lo < cand < hi):
                cand = None
        if cand is None:
            cand = _midpoint(lo, hi)
        if use_newton or width <= newton_entry * scale:
            use_newton = True
            v, d, s = ev.value_deriv_sign(cand)
            if s == 0:
                picked = _pick_certain(ev, lo, hi, cand)
                if picked is None:
                    raise PrecisionExhaustedError("bracket interior drowned in rounding noise")
                cand, v, s = picked
                d = None
        else:
            v, s = ev.value_sign(cand)
            d = None
            if s == 0:
                picked = _pick_certain(ev, lo, hi, cand)
                if picked is None:
                    raise PrecisionExhaustedError("bracket interior drowned in rounding noise")
                cand, v, s = picked
        if not (lo < cand < hi):
            raise PrecisionExhaustedError("bracket stalled below the working precision")
        if s == slo:
            lo = cand
        else:
            hi = cand
        if use_newton and x is not None and abs(cand - x) <= rtol * abs(cand) / 4 and failed_probes < 3:
            certified = _probe_certify(ev, cand, lo, hi, rtol, slo)
            if certified is not None:
                return certified
            failed_probes += 1
            if failed_probes >= 3:
                use_newton = False  # fall back to plain bisection
        x, fx, dx = cand, v, d
    raise PrecisionExhaustedError("zero refinement did not converge")


def _probe_certify(ev: _LevelEval, x, lo, hi, rtol, slo):
    """Certify x by reliable opposite signs across [x - d, x + d], d = rtol|x|/2."""
    delta = rtol * abs(x) / 2
    if delta == 0:
        return None
    a, b = x - delta, x + delta
    if a <= lo:
        sa = slo
        a = lo
    else:
        _, sa = ev.value_sign(a)
    if b >= hi:
        sb = -slo
        b = hi
    else:
        _, sb = ev.value_sign(b)
    if sa != 0 and sb != 0 and sa != sb:
        return x, (b - a) / abs(x)
    return None


# --------------------------------------------------------------------------
# Outer brackets and separator repair
# --------------------------------------------------------------------------


def _grow_outward(ev: _LevelEval, base, direction: int, target_sign: int):
    """First point beyond ``base`` (left or right) with a certain target sign."""
    dist = max(gmpy2.mpfr(1), abs(base))
    for _ in range(600):
        g = base + direction * dist
        _, s = ev.value_sign(g)
        if s == target_sign:
            return g
        if s == 0:
            dist *= 2
            continue
        dist *= 4
    raise OrthoBoundsError("failed to bracket the outermost zero")


def _endpoint_sign(ev: _LevelEval, point, target_sign: int, outward: int, start_rel):
    """Sign at a support endpoint, nudging outward while it is unreliable.

    Zeros can cluster against a lattice endpoint (e.g. the largest zero of
    the (0,1)-supported families sits within e-hundreds of 1), making the
    value there numerically indistinguishable from zero.  Any point just
    outside the support keeps the same bracketing role with a clean sign.
    """
    pt = point
    step = (abs(point) if point != 0 else gmpy2.mpfr(1)) * start_rel / 1024
    for _ in range(80):
        _, s = ev.value_sign(pt)
        if s == target_sign:
            return pt
        if s == -target_sign and pt != point:
            raise PrecisionExhaustedError("support endpoint shows an impossible sign")
        pt = point + outward * step
        step *= 64
    raise PrecisionExhaustedError("support endpoint sign never became reliable")


def _repair_separator(ev: _LevelEval, s, left_limit, right_limit, expected: int, start_rel):
    """A point near s, strictly between the limits, with the expected sign.

    Consecutive-level zeros can collapse onto each other (relative gaps far
    below any working tolerance) so the computed zero of p_{k-1} may sit on
    the wrong side of the adjacent zero of p_k.  The true separating
    interval still has positive width, so a sideways geometric search
    (starting just outside the separator's own accuracy radius) finds a
    reliable point of the expected sign inside it.
    """
    span_l = s - left_limit
    span_r = right_limit - s
    base = abs(s) if s != 0 else max(span_l, span_r)
    delta = base * start_rel * 16
    for _ in range(200):
        for cand in (s - delta, s + delta):
            if not left_limit < cand < right_limit:
                continue
            _, sign = ev.value_sign(cand)
            if sign == expected:
                return cand
        delta *= 16
        if delta > max(span_l, span_r) * 4:
            break
    raise PrecisionExhaustedError("could not repair a separator with an unreliable sign")


# --------------------------------------------------------------------------
# Bootstrap engine
# --------------------------------------------------------------------------


def _level_points(ev: _LevelEval, k: int, seps, left, right, sep_rel):
    """Bracket endpoints [left, separators..., right] with certain signs.

    The expected sign at position i is (-1)^(k-i): the number of zeros of
    p_k lying to the right of the point.
    """
    pts = [left] + list(seps) + [right]
    signs = [0] * len(pts)
    signs[0] = 1 if k % 2 == 0 else -1
    signs[-1] = 1
    for i in range(1, len(pts) - 1):
        expected = 1 if (k - i) % 2 == 0 else -1
        _, s = ev.value_sign(pts[i])
        if s != expected:
            pts[i] = _repair_separator(ev, pts[i], pts[i - 1], pts[i + 1], expected, sep_rel)
        signs[i] = expected
    return pts, signs


def _bootstrap_zeros(cs, ls, nlevels: int, support, rtol_bits: int, pe: int):
    """Zeros of the level-``nlevels`` chain polynomial, plus achieved rtol."""
    with context(pe):
        rtol_final = gmpy2.exp2(-rtol_bits)
        # Interior levels only provide brackets, but consecutive-degree zeros
        # can agree to hundreds of bits, so the separator accuracy scales
        # with the working precision: escalation then tightens both.
        rtol_bracket = gmpy2.exp2(-max(44, rtol_bits + 12, pe // 4))
        symmetric = all(cs[k] == 0 for k in range(1, nlevels + 1))
        if symmetric:
            return _bootstrap_symmetric(cs, ls, nlevels, rtol_final, rtol_bracket, pe)

        lo_sup = as_mpfr(support[0]) if support[0] is not None else None
        hi_sup = as_mpfr(support[1]) if support[1] is not None else None
        prev = [gmpy2.mpfr(cs[1])]
        achieved = gmpy2.mpfr(0)
        for k in range(2, nlevels + 1):
            ev = _LevelEval(cs, ls, k, pe)
            rtol_k = rtol_final if k == nlevels else rtol_bracket
            left_sign = 1 if k % 2 == 0 else -1
            if lo_sup is not None:
                left = _endpoint_sign(ev, lo_sup, left_sign, -1, rtol_bracket)
            else:
                left = _grow_outward(ev, prev[0], -1, left_sign)
            if hi_sup is not None:
                right = _endpoint_sign(ev, hi_sup, 1, +1, rtol_bracket)
            else:
                right = _grow_outward(ev, prev[-1], +1, 1)

            pts, signs = _level_points(ev, k, prev, left, right, rtol_bracket)
            zs = []
            worst = gmpy2.mpfr(0)
            for i in range(k):
                root, ach = _refine(ev, pts[i], signs[i], pts[i + 1], signs[i + 1], rtol_k)
                zs.append(root)
                worst = max(worst, ach)
            prev = zs
            if k == nlevels:
                achieved = worst
        return prev, achieved


def _bootstrap_symmetric(cs, ls, nlevels: int, rtol_final, rtol_bracket, pe: int):
    """Specialised path for even weights: track positive zeros, mirror the rest.

    For odd degrees the middle zero is exactly 0 (the recurrence with all
    centers zero preserves parity), so it is inserted directly.
    """
    pos_prev: list = []
    achieved = gmpy2.mpfr(0)
    for k in range(2, nlevels + 1):
        ev = _LevelEval(cs, ls, k, pe)
        rtol_k = rtol_final if k == nlevels else rtol_bracket

        base = pos_prev[-1] if pos_prev else gmpy2.mpfr(0)
        right = _grow_outward(ev, base, +1, 1)
        if k % 2 == 0:
            seps = pos_prev
            left = gmpy2.mpfr(0)
            offset = k // 2  # index of the first positive zero within the full set
        else:
            seps = pos_prev[1:] if pos_prev else []
            left = pos_prev[0] if pos_prev else gmpy2.mpfr(0)
            offset = (k + 1) // 2
        pts = [left] + list(seps) + [right]
        signs = [0] * len(pts)
        for i in range(len(pts)):
            expected = 1 if (k - (offset + i)) % 2 == 0 else -1
            if 0 < i < len(pts) - 1:
                _, s = ev.value_sign(pts[i])
                if s != expected:
                    pts[i] = _repair_separator(ev, pts[i], pts[i - 1], pts[i + 1], expected, rtol_bracket)
            elif i == 0:
                _, s = ev.value_sign(pts[0])
                if s != expected:
                    raise PrecisionExhaustedError("unreliable sign at the symmetry point")
            signs[i] = expected

        zs = []
        worst = gmpy2.mpfr(0)
        for i in range(len(pts) - 1):
            root, ach = _refine(ev, pts[i], signs[i], pts[i + 1], signs[i + 1], rtol_k)
            zs.append(root)
            worst = max(worst, ach)
        pos_prev = zs
        if k == nlevels:
            achieved = worst
    zeros = [-z for z in reversed(pos_prev)]
    if nlevels % 2 == 1:
        zeros.append(gmpy2.mpfr(0))
    zeros.extend(pos_prev)
    return zeros, achieved


# --------------------------------------------------------------------------
# Low-degree companion + Newton root solving
# --------------------------------------------------------------------------


def low_degree_roots(poly, prec: int | None = None):
    """All real roots of a polynomial of degree <= 4, to relative 1e-30.

    Seeds come from the double-precision companion matrix of a variable-
    rescaled copy (so coefficients spanning hundreds of orders of magnitude
    stay representable), then each candidate is polished by Newton on the
    original coefficients at full precision.
    """
    prec = prec or default_precision()
    work = max(prec, 128) + GUARD_BITS
    with context(work):
        if isinstance(poly, Poly):
            coeffs = [gmpy2.mpfr(c) for c in poly.coeffs]
        else:
            coeffs = [as_mpfr(c) for c in poly]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        deg = len(coeffs) - 1
        if deg > 4:
            raise ValueError(f"only degrees up to 4 are supported, got {deg}")
        roots = []
        # factor out zeros at the origin exactly
        while coeffs and coeffs[0] == 0 and len(coeffs) > 1:
            roots.append(gmpy2.mpfr(0))
            coeffs = coeffs[1:]
        deg = len(coeffs) - 1
        if deg == 0:
            pass
        elif deg == 1:
            roots.append(-coeffs[0] / coeffs[1])
        elif deg == 2:
            roots.extend(_quadratic_roots(coeffs[2], coeffs[1], coeffs[0]))
        else:
            roots.extend(_seeded_roots(coeffs))
        out = sorted(round_to(r, prec) for r in roots)
    return out


def _quadratic_roots(a, b, c):
    """Real roots of a x^2 + b x + c, cancellation-free branch."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    sq = gmpy2.sqrt(disc)
    if b >= 0:
        qf = -(b + sq) / 2
    else:
        qf = -(b - sq) / 2
    if qf == 0:
        return [gmpy2.mpfr(0), gmpy2.mpfr(0)] if disc == 0 else [gmpy2.mpfr(0), -b / a]
    return sorted([qf / a, c / qf])


def _seeded_roots(coeffs):
    """Real roots of a cubic/quartic via balanced double seeds + Newton."""
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    # rescale x = s*y with s an exact power of two near |m0|^(1/deg)
    exp0 = gmpy2.get_exp(monic[0]) if monic[0] != 0 else 0
    s = gmpy2.exp2(exp0 // deg) if exp0 else gmpy2.mpfr(1)
    scaled = [monic[j] / s ** (deg - j) for j in range(deg)] + [gmpy2.mpfr(1)]
    seeds = np.roots([float(c) for c in reversed(scaled)])

    poly = Poly(tuple(coeffs))
    dpoly = poly.deriv()
    found = []
    for seed in seeds:
        x = gmpy2.mpfr(float(seed.real)) * s
        converged = False
        for _ in range(80):
            fx = poly.eval(x)
            dfx = dpoly.eval(x)
            if dfx == 0:
                break
            step = fx / dfx
            x_next = x - step
            if abs(step) <= abs(x_next) * gmpy2.exp2(-102) or (x_next == x):
                x = x_next
                converged = True
                break
            x = x_next
        if not converged:
            continue
        if abs(float(seed.imag)) > 1e-6 * (abs(float(seed.real)) + 1e-280):
            # complex seed that wandered onto the real line: accept only if
            # it is a genuine real root (checked by residual against slope)
            if abs(poly.eval(x)) > abs(dpoly.eval(x)) * abs(x) * gmpy2.exp2(-80):
                continue
        if any(abs(x - r) <= gmpy2.exp2(-80) * max(abs(x), abs(r)) for r in found):
            continue
        found.append(x)
    return found

"""Weight-modification determinants and the generic mixed-recurrence builder.

Multiplying an orthogonality weight w by a polynomial c_k (positive on the
support) produces a new orthogonal sequence {g_{n,k}}.  The classical
determinant formula expresses c_k(x) g_{n,k}(x) through p_n, ..., p_{n+k}
evaluated at x and at the zeros of c_k (rows of derivatives for multiple
zeros):

    c_k(x) g_{n,k}(x) = sum_j U_j p_{n+j}(x),

where the U_j are signed minors of the numeric evaluation block.  Writing
every p_{n-m+j} in the basis (p_n, p_{n-1}) via the recurrence then yields
a mixed three-term identity

    U_k c_k(x) g_{n-m,k}(x) = R(x) p_n(x) - G(x) p_{n-1}(x),

with deg G = max(m-1, k-m-1) and deg R = max(m-2, k-m).  For k <= 2m the
polynomial G has exact degree m-1 and its zeros are inner bounds for the
extreme zeros of p_n (the bound-producing case).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import gmpy2

from .bigfloat import GUARD_BITS, as_mpfr, context, default_precision, exact_rational, round_to
from .errors import DegenerateConfigurationError, OrthoBoundsError
from .families import FamilySpec, recurrence_table
from .polynomials import Poly
from .recurrence import chain_value


@dataclass(frozen=True)
class CSpec:
    """Zeros-with-multiplicity of the monic weight-modifier polynomial c_k."""

    points: tuple  # ((value: mpq, multiplicity: int), ...)

    @staticmethod
    def make(points) -> "CSpec":
        items = []
        for value, mult in points:
            mult = int(mult)
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            items.append((exact_rational(value), mult))
        return CSpec(tuple(items))

    @staticmethod
    def power_of_x(k: int) -> "CSpec":
        """c_k(x) = x^k (the parameter-shift modifier); k = 0 gives c = 1."""
        if k < 0:
            raise ValueError("k must be >= 0")
        return CSpec(((exact_rational(0), k),) if k else ())

    @property
    def k(self) -> int:
        return sum(mult for _, mult in self.points)

    def eval(self, x):
        """Value of the monic c_k at x (assumes an active context)."""
        acc = gmpy2.mpfr(1)
        xv = as_mpfr(x)
        for value, mult in self.points:
            acc *= (xv - as_mpfr(value)) ** mult
        return acc


@dataclass(frozen=True)
class MixedRec:
    """The identity scale * c_k(x) * g_{n-m,k}(x) = pn_factor(x) p_n(x) - bound_factor(x) p_{n-1}(x)."""

    n: int
    m: int
    k: int
    scale: gmpy2.mpfr
    pn_factor: Poly
    bound_factor: Poly
    degree_warning: bool  # set when k > 2m, so deg bound_factor = k-m-1 > m-1


def _chain_derivs(cs, ls, x, n_lo: int, n_hi: int, rmax: int):
    """Values p_m^(r)(x) for n_lo <= m <= n_hi, 0 <= r <= rmax.

    Derivatives follow from differentiating the recurrence r times:
    p_m^(r) = r p_{m-1}^(r-1) + (x - C_m) p_{m-1}^(r) - lambda_m p_{m-2}^(r).
    """
    zero = gmpy2.mpfr(0)
    prev = [zero] * (rmax + 1)  # p_{-1}
    cur = [gmpy2.mpfr(1)] + [zero] * rmax  # p_0
    out = {}
    if n_lo <= 0 <= n_hi:
        out[0] = tuple(cur)
    for m in range(1, n_hi + 1):
        xc = x - cs[m]
        lm = ls[m] if m >= 2 else zero
        nxt = [zero] * (rmax + 1)
        for r in range(rmax + 1):
            term = xc * cur[r] - lm * prev[r]
            if r:
                term += r * cur[r - 1]
            nxt[r] = term
        prev, cur = cur, nxt
        if m >= n_lo:
            out[m] = tuple(cur)
    return out


def _det_full_pivot(matrix):
    """Determinant via Gaussian elimination with full pivoting."""
    size = len(matrix)
    if size == 0:
        return gmpy2.mpfr(1)
    m = [row[:] for row in matrix]
    sign = 1
    det = gmpy2.mpfr(1)
    for step in range(size):
        piv_r, piv_c, piv = step, step, abs(m[step][step])
        for r in range(step, size):
            for c in range(step, size):
                if abs(m[r][c]) > piv:
                    piv_r, piv_c, piv = r, c, abs(m[r][c])
        if piv == 0:
            return gmpy2.mpfr(0)
        if piv_r != step:
            m[piv_r], m[step] = m[step], m[piv_r]
            sign = -sign
        if piv_c != step:
            for row in m:
                row[piv_c], row[step] = row[step], row[piv_c]
            sign = -sign
        pivot = m[step][step]
        det *= pivot
        for r in range(step + 1, size):
            factor = m[r][step] / pivot
            if factor == 0:
                continue
            for c in range(step, size):
                m[r][c] -= factor * m[step][c]
    return det if sign > 0 else -det


@functools.lru_cache(maxsize=512)
def _cofactors_cached(spec: FamilySpec, n_base: int, c: CSpec, prec: int):
    k = c.k
    if k == 0:
        return (gmpy2.mpfr(1),)
    with context(prec + GUARD_BITS):
        cs, ls = recurrence_table(spec, n_base + k, prec)
        rows = []
        for value, mult in c.points:
            xv = as_mpfr(value)
            derivs = _chain_derivs(cs, ls, xv, n_base, n_base + k, mult - 1)
            for r in range(mult):
                rows.append([derivs[n_base + j][r] for j in range(k + 1)])
        cofactors = []
        for j in range(k + 1):
            minor = [[row[col] for col in range(k + 1) if col != j] for row in rows]
            det = _det_full_pivot(minor)
            cofactors.append(det if j % 2 == 0 else -det)
        top = max(abs(u) for u in cofactors)
        if top == 0:
            raise DegenerateConfigurationError(
                f"all cofactors vanish for {spec.describe()}, n={n_base}, k={k}"
            )
        if abs(cofactors[k]) <= top * gmpy2.exp2(-(prec // 2)):
            raise DegenerateConfigurationError(
                f"leading cofactor vanishes for {spec.describe()}, n={n_base}, k={k}; "
                "the modified polynomial degenerates"
            )
    return tuple(cofactors)


def christoffel_eval(spec: FamilySpec, n: int, c: CSpec, x, prec: int | None = None):
    """The determinant value: c_k(x) g_{n,k}(x) up to an x-independent factor.

    With monic inputs the normalization is exactly ``U_k``: the value equals
    U_k * c_k(x) * (monic g_{n,k})(x).  For k = 0 this is the monic p_n(x).
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    prec = prec or default_precision()
    cofactors = _cofactors_cached(spec, n, c, prec)
    nmax = n + c.k
    cs, ls = recurrence_table(spec, max(nmax, 1), prec)
    with context(prec + GUARD_BITS):
        xv = as_mpfr(x)
        total = gmpy2.mpfr(0)
        # one recurrence pass, dotting against the cofactors as we go
        p0 = gmpy2.mpfr(1)
        if n == 0:
            total += cofactors[0] * p0
        if nmax >= 1:
            p1 = xv - cs[1]
            if n <= 1:
                total += cofactors[1 - n] * p1
            for deg in range(2, nmax + 1):
                p0, p1 = p1, (xv - cs[deg]) * p1 - ls[deg] * p0
                if deg >= n:
                    total += cofactors[deg - n] * p1
    return round_to(total, prec)


def poly_pair_expansion(spec: FamilySpec, n: int, n_target: int, prec: int | None = None):
    """(A, B) with p_{n_target} = A p_n + B p_{n-1} identically.

    Computed by propagating the recurrence with polynomial coefficients
    upward or downward from the pair (p_n, p_{n-1}).
    """
    if n_target < 0:
        raise ValueError("target degree must be non-negative")
    if n < 1:
        raise ValueError("need n >= 1")
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        pairs = _pair_range(spec, n, min(n_target, n - 1), max(n_target, n), prec)
        a, b = pairs[n_target]
    return a, b


def _pair_range(spec: FamilySpec, n: int, lo: int, hi: int, prec: int):
    """Expansion pairs for every degree in [lo, hi]; assumes active context."""
    cs, ls = recurrence_table(spec, max(hi, n), prec)
    pairs = {
        n: (Poly.constant(1), Poly.zero()),
        n - 1: (Poly.zero(), Poly.constant(1)),
    }
    for t in range(n - 2, lo - 1, -1):
        a2, b2 = pairs[t + 2]
        a1, b1 = pairs[t + 1]
        inv = 1 / ls[t + 2]
        a = (a1.times_x_minus(cs[t + 2]) - a2).scaled(inv)
        b = (b1.times_x_minus(cs[t + 2]) - b2).scaled(inv)
        pairs[t] = (a, b)
    for t in range(n + 1, hi + 1):
        a1, b1 = pairs[t - 1]
        a2, b2 = pairs[t - 2]
        a = a1.times_x_minus(cs[t]) - a2.scaled(ls[t])
        b = b1.times_x_minus(cs[t]) - b2.scaled(ls[t])
        pairs[t] = (a, b)
    return pairs


_VALIDATION_MULTIPLIERS = ("0.13", "0.77", "1.9", "-0.6", "3.7", "0.125", "5.1", "-2.3", "0.01", "9.7")


def build_mixed_recurrence(
    spec: FamilySpec,
    n: int,
    m: int,
    c: CSpec,
    prec: int | None = None,
    validate: bool = True,
) -> MixedRec:
    """Construct the mixed three-term identity for (n, m, c).

    The bound-producing contract needs k <= 2m; for larger k the identity
    still holds but the coefficient of p_{n-1} has degree k-m-1 > m-1, which
    is reported through ``degree_warning``.
    """
    if not 2 <= m <= n - 1:
        raise ValueError(f"need 2 <= m <= n-1, got m={m}, n={n}")
    prec = prec or default_precision()
    k = c.k
    nb = n - m
    cofactors = _cofactors_cached(spec, nb, c, prec)
    with context(prec + GUARD_BITS):
        pairs = _pair_range(spec, n, nb, nb + k, prec)
        r_acc = Poly.zero()
        g_acc = Poly.zero()
        for j in range(k + 1):
            a, b = pairs[nb + j]
            r_acc = r_acc + a.scaled(cofactors[j])
            g_acc = g_acc + b.scaled(cofactors[j])
        pn_factor = r_acc.normalized()
        bound_factor = g_acc.scaled(-1).normalized()
        warn = k > 2 * m
        expected_g = max(m - 1, k - m - 1)
        expected_r = max(m - 2, k - m)
        trim_eps = gmpy2.exp2(-(prec // 2))
        if bound_factor.trimmed(trim_eps).degree != expected_g:
            raise OrthoBoundsError(
                f"coefficient of p_(n-1) has degree {bound_factor.degree}, expected {expected_g}"
            )
        if pn_factor.trimmed(trim_eps).degree != expected_r:
            raise OrthoBoundsError(
                f"coefficient of p_n has degree {pn_factor.degree}, expected {expected_r}"
            )
        rec = MixedRec(
            n=n,
            m=m,
            k=k,
            scale=round_to(cofactors[k], prec),
            pn_factor=pn_factor,
            bound_factor=bound_factor,
            degree_warning=warn,
        )
        if validate:
            _validate_identity(spec, rec, c, prec)
    return rec


def mixed_recurrence_residual(spec: FamilySpec, rec: MixedRec, c: CSpec, x, prec: int | None = None):
    """(residual, scale) of the mixed identity at x.

    The left side is evaluated through the determinant, the right side
    through the assembled polynomial coefficients, so the two routes are
    computationally independent.
    """
    prec = prec or default_precision()
    n = rec.n
    cs, ls = recurrence_table(spec, n, prec)
    with context(prec + GUARD_BITS):
        xv = as_mpfr(x)
        lhs = gmpy2.mpfr(christoffel_eval(spec, n - rec.m, c, xv, prec))
        p_n = chain_value(cs, ls, n, xv)
        p_n1 = chain_value(cs, ls, n - 1, xv)
        t_r = rec.pn_factor.eval(xv) * p_n
        t_g = rec.bound_factor.eval(xv) * p_n1
        residual = lhs - (t_r - t_g)
        scale = max(abs(lhs), abs(t_r), abs(t_g))
    return round_to(residual, prec), round_to(scale, prec)


def _validate_identity(spec: FamilySpec, rec: MixedRec, c: CSpec, prec: int) -> None:
    cs, ls = recurrence_table(spec, rec.n, prec)
    scale_hint = abs(cs[rec.n]) + gmpy2.sqrt(abs(ls[rec.n]))
    if scale_hint == 0:
        scale_hint = gmpy2.mpfr(1)
    bound = gmpy2.exp2(-prec + 64)
    for mult in _VALIDATION_MULTIPLIERS:
        x = scale_hint * as_mpfr(mult)
        residual, scale = mixed_recurrence_residual(spec, rec, c, x, prec)
        if scale == 0:
            continue
        if abs(residual) > bound * scale:
            raise OrthoBoundsError(
                f"mixed identity residual {float(abs(residual) / scale):.3e} exceeds "
                f"tolerance at x={float(x):.6g} for {spec.describe()}, n={rec.n}, m={rec.m}, k={rec.k}"
            )

"""Supported polynomial families and their recurrence data.

Each family is defined through its terminating (basic) hypergeometric
series in the standard reference normalization.  The monic three-term
recurrence

    p_n(x) = (x - C_n) p_{n-1}(x) - lambda_n p_{n-2}(x),
    p_0 = 1,  p_{-1} = 0,  lambda_n > 0,

is not transcribed from published formulas; instead C_n and lambda_n are
derived here directly from the series by extracting the three leading
coefficients of consecutive polynomials.  Writing the monic polynomial as
x^n + s_n x^{n-1} + t_n x^{n-2} + ..., the recurrence forces

    C_n = s_{n-1} - s_n,
    lambda_n = t_{n-1} - t_n - C_n s_{n-1},

which is what ``recurrence_table`` computes.  The result is validated by
the residual property tests (recurrence consistency at random points).

The q-families are handled in the substituted variable: the library's
``x`` is the geometric lattice point, so all polynomials here are ordinary
polynomials on a real interval.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import gmpy2

from .bigfloat import GUARD_BITS, as_mpfr, context, default_precision, exact_rational, round_to
from .errors import ParameterDomainError


class Family(enum.Enum):
    """Identifiers for the supported families; values double as CLI tokens."""

    LAGUERRE = "laguerre"
    LITTLE_Q_JACOBI = "little-q-jacobi"
    LITTLE_Q_LAGUERRE = "little-q-laguerre"
    ALT_Q_CHARLIER = "alt-q-charlier"
    STIELTJES_WIGERT = "stieltjes-wigert"
    DISCRETE_Q_HERMITE_II = "qhermite2"


_PARAM_NAMES = {
    Family.LAGUERRE: ("alpha",),
    Family.LITTLE_Q_JACOBI: ("alpha", "beta", "q"),
    Family.LITTLE_Q_LAGUERRE: ("alpha", "q"),
    Family.ALT_Q_CHARLIER: ("alpha", "q"),
    Family.STIELTJES_WIGERT: ("q",),
    Family.DISCRETE_Q_HERMITE_II: ("q",),
}

# Open support interval (lo, hi); None means unbounded on that side.
_SUPPORT = {
    Family.LAGUERRE: (0, None),
    Family.LITTLE_Q_JACOBI: (0, 1),
    Family.LITTLE_Q_LAGUERRE: (0, 1),
    Family.ALT_Q_CHARLIER: (0, 1),
    Family.STIELTJES_WIGERT: (0, None),
    Family.DISCRETE_Q_HERMITE_II: (None, None),
}


@dataclass(frozen=True)
class FamilySpec:
    """A family identity plus an exact-rational parameter set."""

    family: Family
    params: tuple[tuple[str, gmpy2.mpq], ...]

    def __post_init__(self):
        names = tuple(name for name, _ in self.params)
        if names != _PARAM_NAMES[self.family]:
            raise ParameterDomainError(
                f"{self.family.value} takes parameters {_PARAM_NAMES[self.family]}, got {names}"
            )
        _validate_domain(self.family, dict(self.params))

    def param(self, name: str) -> gmpy2.mpq:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def alpha(self):
        return self.param("alpha") if "alpha" in _PARAM_NAMES[self.family] else None

    @property
    def beta(self):
        return self.param("beta") if "beta" in _PARAM_NAMES[self.family] else None

    @property
    def q(self):
        return self.param("q") if "q" in _PARAM_NAMES[self.family] else None

    @property
    def is_q_family(self) -> bool:
        return self.family is not Family.LAGUERRE

    @property
    def symmetric(self) -> bool:
        """True when the weight is even, so zeros come in +/- pairs."""
        return self.family is Family.DISCRETE_Q_HERMITE_II

    def support(self):
        return _SUPPORT[self.family]

    def describe(self) -> str:
        parts = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family.value}({parts})"


def family_spec(family: Family | str, **params) -> FamilySpec:
    """Build a validated FamilySpec; parameter values become exact rationals."""
    fam = Family(family) if not isinstance(family, Family) else family
    expected = _PARAM_NAMES[fam]
    missing = [name for name in expected if name not in params]
    if missing:
        raise ParameterDomainError(f"{fam.value} requires parameters {missing}")
    extra = [name for name in params if name not in expected]
    if extra:
        raise ParameterDomainError(f"{fam.value} does not take parameters {extra}")
    items = tuple((name, exact_rational(params[name])) for name in expected)
    return FamilySpec(fam, items)


def _validate_domain(family: Family, p: dict) -> None:
    if family is Family.LAGUERRE:
        if not p["alpha"] > -1:
            raise ParameterDomainError("laguerre requires alpha > -1")
        return
    q = p["q"]
    if not (0 < q < 1):
        raise ParameterDomainError(f"{family.value} requires 0 < q < 1")
    if family in (Family.LITTLE_Q_JACOBI, Family.LITTLE_Q_LAGUERRE):
        if not (0 < p["alpha"] * q < 1):
            raise ParameterDomainError(f"{family.value} requires 0 < alpha*q < 1")
    if family is Family.LITTLE_Q_JACOBI:
        if not p["beta"] * q < 1:
            raise ParameterDomainError("little-q-jacobi requires beta*q < 1")
    if family is Family.ALT_Q_CHARLIER:
        if not p["alpha"] > 0:
            raise ParameterDomainError("alt-q-charlier requires alpha > 0")


def shifted_spec(spec: FamilySpec, k: int) -> FamilySpec:
    """The family whose weight is x^k times the weight of ``spec``.

    For the Laguerre weight this shifts alpha by k units; for the shiftable
    q-weights it multiplies alpha by q^k.  Families without a shiftable
    parameter only admit k = 0.
    """
    if k == 0:
        return spec
    if k < 0:
        raise ValueError("shift must be non-negative")
    if spec.family is Family.LAGUERRE:
        return family_spec(spec.family, alpha=spec.alpha + k)
    if spec.family in (Family.LITTLE_Q_JACOBI, Family.LITTLE_Q_LAGUERRE, Family.ALT_Q_CHARLIER):
        new_alpha = spec.alpha * spec.q ** k
        kwargs = {name: spec.param(name) for name in _PARAM_NAMES[spec.family]}
        kwargs["alpha"] = new_alpha
        return family_spec(spec.family, **kwargs)
    raise ValueError(f"{spec.family.value} has no shiftable parameter")


# --------------------------------------------------------------------------
# Series building blocks (these assume an active gmpy2 context)
# --------------------------------------------------------------------------


def _poch(a, k: int):
    """Rising factorial (a)_k."""
    prod = gmpy2.mpfr(1)
    for i in range(k):
        prod *= a + i
    return prod


def _qpoch(a, q, k: int):
    """q-shifted factorial (a; q)_k = prod_{i<k} (1 - a q^i)."""
    prod = gmpy2.mpfr(1)
    term = gmpy2.mpfr(a)
    for _ in range(k):
        prod *= 1 - term
        term *= q
    return prod


def _qbinom(n: int, k: int, q):
    """Gaussian binomial coefficient [n choose k]_q."""
    if k < 0 or k > n:
        return gmpy2.mpfr(0)
    return _qpoch(q, q, n) / (_qpoch(q, q, k) * _qpoch(q, q, n - k))


def _tri(v: int) -> int:
    return v * (v - 1) // 2


def _series_coeff(spec: FamilySpec, n: int, j: int):
    """Coefficient of x^j in the reference-normalized p_n.  Active context."""
    fam = spec.family
    if j < 0 or j > n:
        return gmpy2.mpfr(0)
    if fam is Family.LAGUERRE:
        a = gmpy2.mpfr(spec.alpha)
        pref = _poch(a + 1, n) / gmpy2.fac(n)
        return pref * _poch(gmpy2.mpfr(-n), j) / (_poch(a + 1, j) * gmpy2.fac(j))
    q = gmpy2.mpfr(spec.q)
    if fam is Family.DISCRETE_Q_HERMITE_II:
        # Series terms carry (i x; q)_l factors; expanding them shows the
        # coefficient of x^j vanishes for n-j odd and is otherwise a short
        # alternating sum of Gaussian binomials.
        if (n - j) % 2 == 1:
            return gmpy2.mpfr(0)
        total = gmpy2.mpfr(0)
        for ell in range(j, n + 1):
            term = _qbinom(n, ell, q) * _qbinom(ell, j, q)
            total += -term if ell % 2 else term
        sign = -1 if (j + (n - j) // 2) % 2 else 1
        return sign * q ** (_tri(j) - _tri(n)) * total
    qinv_n = q ** (-n)
    if fam is Family.LITTLE_Q_JACOBI:
        a = gmpy2.mpfr(spec.alpha)
        b = gmpy2.mpfr(spec.beta)
        num = _qpoch(qinv_n, q, j) * _qpoch(a * b * q ** (n + 1), q, j) * q**j
        return num / (_qpoch(a * q, q, j) * _qpoch(q, q, j))
    if fam is Family.LITTLE_Q_LAGUERRE:
        a = gmpy2.mpfr(spec.alpha)
        return _qpoch(qinv_n, q, j) * q**j / (_qpoch(a * q, q, j) * _qpoch(q, q, j))
    if fam is Family.ALT_Q_CHARLIER:
        a = gmpy2.mpfr(spec.alpha)
        return _qpoch(qinv_n, q, j) * _qpoch(-a * q**n, q, j) * q**j / _qpoch(q, q, j)
    if fam is Family.STIELTJES_WIGERT:
        expo = _tri(j) + (n + 1) * j
        return _qpoch(qinv_n, q, j) * q**expo / (_qpoch(q, q, j) * _qpoch(q, q, n))
    raise AssertionError(f"unhandled family {fam}")


# --------------------------------------------------------------------------
# Public operations
# --------------------------------------------------------------------------


def hyper_eval(spec: FamilySpec, n: int, x, prec: int | None = None):
    """Value of p_n at x in the reference normalization.

    The terminating series is summed term by term (n+1 terms) at a guarded
    precision and rounded back to ``prec`` bits.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        result = _hyper_sum(spec, n, as_mpfr(x))
    return round_to(result, prec)


def _hyper_sum(spec: FamilySpec, n: int, x):
    fam = spec.family
    if fam is Family.DISCRETE_Q_HERMITE_II:
        return _hyper_sum_qhermite2(spec, n, x)
    if fam is Family.LAGUERRE:
        a = gmpy2.mpfr(spec.alpha)
        term = _poch(a + 1, n) / gmpy2.fac(n)
        total = term
        for j in range(n):
            term *= (j - n) * x / ((a + 1 + j) * (j + 1))
            total += term
        return total
    q = gmpy2.mpfr(spec.q)
    qx = q * x
    if fam is Family.STIELTJES_WIGERT:
        term = 1 / _qpoch(q, q, n)
        total = term
        q_jmn = q ** (-n)  # q^{j-n}
        q_j1 = q  # q^{j+1}
        q_j = gmpy2.mpfr(1)  # q^{j}
        qn1x = q**n * qx  # q^{n+1} x
        for _ in range(n):
            term *= (1 - q_jmn) * q_j * qn1x / (1 - q_j1)
            total += term
            q_jmn *= q
            q_j1 *= q
            q_j *= q
        return total
    a = gmpy2.mpfr(spec.alpha)
    q_jmn = q ** (-n)
    q_j1 = q
    term = gmpy2.mpfr(1)
    total = term
    if fam is Family.LITTLE_Q_JACOBI:
        b = gmpy2.mpfr(spec.beta)
        abq = a * b * q ** (n + 1)  # alpha beta q^{n+1+j}
        aq = a * q  # alpha q^{1+j}
        for _ in range(n):
            term *= (1 - q_jmn) * (1 - abq) * qx / ((1 - aq) * (1 - q_j1))
            total += term
            q_jmn *= q
            q_j1 *= q
            abq *= q
            aq *= q
        return total
    if fam is Family.LITTLE_Q_LAGUERRE:
        aq = a * q
        for _ in range(n):
            term *= (1 - q_jmn) * qx / ((1 - aq) * (1 - q_j1))
            total += term
            q_jmn *= q
            q_j1 *= q
            aq *= q
        return total
    if fam is Family.ALT_Q_CHARLIER:
        aqn = a * q**n  # alpha q^{n+j}
        for _ in range(n):
            term *= (1 - q_jmn) * (1 + aqn) * qx / (1 - q_j1)
            total += term
            q_jmn *= q
            q_j1 *= q
            aqn *= q
        return total
    raise AssertionError(f"unhandled family {fam}")


def _hyper_sum_qhermite2(spec: FamilySpec, n: int, x):
    """2phi0-type series with an imaginary argument parameter.

    The partial products (i x; q)_j are accumulated in complex arithmetic;
    the prefactor i^{-n} makes the result real (the residual imaginary part
    is rounding noise and is discarded).
    """
    q = gmpy2.mpfr(spec.q)
    ix = gmpy2.mpc(0, x)
    acc = gmpy2.mpc(0)
    prod = gmpy2.mpc(1)
    coeff = gmpy2.mpfr(1)  # (-1)^j [n choose j]_q
    q_pow = gmpy2.mpfr(1)  # q^j
    q_nmj = q**n  # q^{n-j}
    for j in range(n + 1):
        acc += coeff * prod
        prod *= 1 - ix * q_pow
        coeff *= -(1 - q_nmj) / (1 - q_pow * q)
        q_pow *= q
        q_nmj /= q
    pref = (gmpy2.mpc(1), gmpy2.mpc(0, -1), gmpy2.mpc(-1), gmpy2.mpc(0, 1))[n % 4]  # i^{-n}
    value = pref * q ** (-_tri(n)) * acc
    return value.real


def kls_leading_coeff(spec: FamilySpec, n: int, prec: int | None = None):
    """k_n with p_n(reference normalization) = k_n * monic p_n."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        value = _series_coeff(spec, n, n)
    return round_to(value, prec)


@dataclass(frozen=True)
class RecurrencePair:
    """Monic recurrence data: p_n = (x - c) p_{n-1} - lam p_{n-2}.

    ``lam`` is 0 by convention for n = 1 (it multiplies p_{-1} = 0).
    """

    c: gmpy2.mpfr
    lam: gmpy2.mpfr


def _table_cap(n: int) -> int:
    cap = 8
    while cap < n:
        cap *= 2
    return cap


@functools.lru_cache(maxsize=None)
def _recurrence_table_cached(spec: FamilySpec, ncap: int, prec: int):
    with context(prec + GUARD_BITS):
        cs = [None] * (ncap + 1)
        ls = [None] * (ncap + 1)
        s_prev = gmpy2.mpfr(0)
        t_prev = gmpy2.mpfr(0)
        for m in range(1, ncap + 1):
            km = _series_coeff(spec, m, m)
            s = _series_coeff(spec, m, m - 1) / km
            t = _series_coeff(spec, m, m - 2) / km if m >= 2 else gmpy2.mpfr(0)
            cs[m] = s_prev - s
            if m >= 2:
                ls[m] = t_prev - t - cs[m] * s_prev
            s_prev, t_prev = s, t
    return tuple(cs), tuple(ls)


def recurrence_table(spec: FamilySpec, n: int, prec: int | None = None):
    """(C, L) with C[m], L[m] the monic recurrence coefficients, m <= n.

    C is indexed 1..n and L is indexed 2..n; unused slots are None.  Values
    carry ``prec + GUARD_BITS`` bits and are cached per (spec, prec).
    """
    prec = prec or default_precision()
    cs, ls = _recurrence_table_cached(spec, _table_cap(n), prec)
    return cs[: n + 1], ls[: n + 1]


def monic_coeffs(spec: FamilySpec, n: int, prec: int | None = None) -> RecurrencePair:
    """The pair (C_n, lambda_n) of the monic three-term recurrence."""
    if n < 1:
        raise ValueError("recurrence coefficients are defined for n >= 1")
    prec = prec or default_precision()
    cs, ls = recurrence_table(spec, n, prec)
    lam = ls[n] if n >= 2 else gmpy2.mpfr(0)
    return RecurrencePair(c=round_to(cs[n], prec), lam=round_to(lam, prec))

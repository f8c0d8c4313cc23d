"""Closed-form inner bounds for extreme zeros, and their verification.

Each bound is the extreme zero of the low-degree coefficient polynomial in
a mixed three-term identity: an upper bound for the smallest zero of p_n or
a lower bound for its largest zero.  The formulas below are transcriptions
of the displayed closed forms; the test suite cross-validates every one of
them against the generic determinant builder, which is the trusted route
whenever the two disagree.

One transcription is deliberately corrected: the displayed closed form for
the shift-4 bound of the alternative q-Charlier family contradicts both the
displayed recurrence it is derived from and the reference values; the
version here (denominator 1 + alpha q^n (1 + q - q^n)) is the one the
builder confirms.

"Bound inapplicable" (vanishing denominator, negative discriminant) is a
first-class result carried on the entry, never an exception.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import gmpy2

from .bigfloat import GUARD_BITS, as_mpfr, context, default_precision, round_to
from .christoffel import CSpec, build_mixed_recurrence
from .families import Family, FamilySpec, family_spec, shifted_spec
from .polynomials import Poly
from .zeros import ZeroSet, family_zeros, low_degree_roots


class Direction(enum.Enum):
    UPPER_FOR_SMALLEST = "upper_for_smallest"
    LOWER_FOR_LARGEST = "lower_for_largest"


@dataclass(frozen=True)
class BoundEntry:
    """One bound value with its construction metadata.

    ``m`` and ``shift`` identify the mixed identity that produces the bound
    (shift k means the weight is multiplied by x^k); they are None for
    literature values that are merely restated for comparison.
    """

    name: str
    direction: Direction
    value: gmpy2.mpfr | None
    source: str
    m: int | None = None
    shift: int | None = None
    applicable: bool = True
    note: str = ""


@dataclass(frozen=True)
class BoundReport:
    spec: FamilySpec
    n: int
    entries: tuple

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def value(self, name: str):
        return self.entry(name).value


@dataclass(frozen=True)
class InterlacingReport:
    holds: bool
    violations: tuple  # (gap_index, left_end, right_end) with no or multiple guests
    common_zeros: tuple
    bound_violations: tuple = field(default=())  # (entry_name, value, offending_extreme)


# --------------------------------------------------------------------------
# Laguerre
# --------------------------------------------------------------------------


def laguerre_bounds(n: int, alpha, prec: int | None = None) -> BoundReport:
    """Inner bounds for the extreme zeros of the degree-n Laguerre polynomial."""
    spec = family_spec(Family.LAGUERRE, alpha=alpha)
    if n < 5:
        raise ValueError("laguerre bounds need n >= 5")
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        a = as_mpfr(spec.alpha)
        nn = gmpy2.mpfr(n)
        entries = []

        den = 3 * nn * (nn + a + 1) + (a + 1) * (a + 2)
        num = (a + 2) * (a + 4) * (a + 2 * nn + 1)
        disc = (a + 2) * (a + 4) * ((a * a + 6 * a + 17) * (nn * nn + a * nn + nn) - (a + 2) * (a + 1) ** 2)
        if disc >= 0:
            sq = gmpy2.sqrt(disc)
            entries.append(BoundEntry("b3_minus", Direction.UPPER_FOR_SMALLEST,
                                      round_to((num - sq) / den, prec), "quadratic-m3-shift6", m=3, shift=6))
            entries.append(BoundEntry("b3_plus", Direction.LOWER_FOR_LARGEST,
                                      round_to((num + sq) / den, prec), "quadratic-m3-shift6", m=3, shift=6))
        else:
            for nm, dr in (("b3_minus", Direction.UPPER_FOR_SMALLEST), ("b3_plus", Direction.LOWER_FOR_LARGEST)):
                entries.append(BoundEntry(nm, dr, None, "quadratic-m3-shift6", m=3, shift=6,
                                          applicable=False, note="negative discriminant"))

        cubic_up = Poly.make([
            (a + 1) * (a + 2) * (a + 3) * (a + 4) * (a + 5) * (a + 6) * (a + 7),
            -3 * (a + 2) * (a + 3) * (a + 4) * (a + 5) * (a + 6) * (2 * nn + a + 1),
            (a + 3) * (a + 4) * (a + 5) * (3 * (a + 1) * (a + 2) + 10 * nn * (nn + a + 1)),
            -(a + 4) * (2 * nn + a + 1) * (a * a + 2 * a * nn + 2 * nn * nn + 5 * a + 2 * nn + 6),
        ])
        up_roots = low_degree_roots(cubic_up, prec=prec)
        entries.append(BoundEntry("b4_upper_x1", Direction.UPPER_FOR_SMALLEST,
                                  up_roots[0] if up_roots else None, "cubic-m4-shift8", m=4, shift=8,
                                  applicable=bool(up_roots),
                                  note="" if up_roots else "no real root"))

        cubic_low = Poly.make([
            (a - 3 + 2 * nn) * (a * a + 2 * a * nn + 2 * nn * nn - 3 * a - 6 * nn + 2),
            -(3 * a * a + 10 * a * nn + 10 * nn * nn - 15 * a - 30 * nn + 18),
            3 * (a + 2 * nn - 3),
            gmpy2.mpfr(-1),
        ])
        low_roots = low_degree_roots(cubic_low, prec=prec)
        entries.append(BoundEntry("b4_lower_xn", Direction.LOWER_FOR_LARGEST,
                                  low_roots[-1] if low_roots else None, "cubic-m4-noshift", m=4, shift=0,
                                  applicable=bool(low_roots),
                                  note="" if low_roots else "no real root"))

        gm = (a + 1) * (a + 2) * (a + 4) * (2 * nn + a + 1) / ((a + 1) ** 2 * (a + 2) + (5 * a + 11) * nn * (nn + a + 1))
        entries.append(BoundEntry("b_gm", Direction.UPPER_FOR_SMALLEST, round_to(gm, prec), "literature-upper"))
    return BoundReport(spec=spec, n=n, entries=tuple(entries))


# --------------------------------------------------------------------------
# Little q-Jacobi / little q-Laguerre
# --------------------------------------------------------------------------


def little_qjacobi_upper_x1(n: int, alpha, beta, q, prec: int | None = None):
    """Upper bound for the smallest zero (shift-4 linear coefficient root)."""
    spec = family_spec(Family.LITTLE_Q_JACOBI, alpha=alpha, beta=beta, q=q)
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        a, b, qq = as_mpfr(spec.alpha), as_mpfr(spec.beta), as_mpfr(spec.q)
        num = (a * qq**3 - 1) * (a * qq - 1) * qq ** (n - 1)
        den = (a * b * qq ** (2 * n + 1) + 1) * (a * qq**2 + 1) - a * qq ** (n + 1) * (b + 1) * (qq + 1)
        value = num / den
    return round_to(value, prec)


def little_qlaguerre_upper_x1(n: int, alpha, q, prec: int | None = None):
    """The beta = 0 case of the shift-4 bound."""
    return little_qjacobi_upper_x1(n, alpha, 0, q, prec)


def little_qjacobi_report(n: int, alpha, beta, q, prec: int | None = None) -> BoundReport:
    spec = family_spec(Family.LITTLE_Q_JACOBI, alpha=alpha, beta=beta, q=q)
    value = little_qjacobi_upper_x1(n, alpha, beta, q, prec)
    entry = BoundEntry("b2", Direction.UPPER_FOR_SMALLEST, value, "linear-m2-shift4", m=2, shift=4)
    return BoundReport(spec=spec, n=n, entries=(entry,))


def little_qlaguerre_report(n: int, alpha, q, prec: int | None = None) -> BoundReport:
    spec = family_spec(Family.LITTLE_Q_LAGUERRE, alpha=alpha, q=q)
    value = little_qlaguerre_upper_x1(n, alpha, q, prec)
    entry = BoundEntry("b2", Direction.UPPER_FOR_SMALLEST, value, "linear-m2-shift4", m=2, shift=4)
    return BoundReport(spec=spec, n=n, entries=(entry,))


# --------------------------------------------------------------------------
# Alternative q-Charlier
# --------------------------------------------------------------------------


def alt_qcharlier_bounds(n: int, alpha, q, prec: int | None = None) -> BoundReport:
    """Upper bounds for the smallest zero of the alternative q-Charlier polynomial."""
    spec = family_spec(Family.ALT_Q_CHARLIER, alpha=alpha, q=q)
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        a, qq = as_mpfr(spec.alpha), as_mpfr(spec.q)
        qn = qq**n
        entries = []

        den2 = 1 + a * qn * (1 + qq - qn)
        if den2 > 0:
            b2 = qq ** (n - 1) / den2
            entries.append(BoundEntry("b2", Direction.UPPER_FOR_SMALLEST, round_to(b2, prec),
                                      "linear-m2-shift4", m=2, shift=4))
        else:
            entries.append(BoundEntry("b2", Direction.UPPER_FOR_SMALLEST, None, "linear-m2-shift4",
                                      m=2, shift=4, applicable=False, note="non-positive denominator"))

        # quadratic coefficient of the (m=3, shift x^6) identity; the alpha^2
        # bracket needs q^{2n+1}(q^2+q+1), not q^{2n+2}(...), to be consistent
        # with the determinant construction
        s = qq * qq + qq + 1
        a2 = qq**3 * (1 + (qn**4 + (qn**2 * qq - qn**3) * s) * a * a
                      + (qn + qn * qq**2 - qn**2 + qn * qq) * a)
        b1 = qq ** (n + 1) * (qq + 1) * (a * qn**2 - a * qn * qq**2 - a * qn - 1)
        c0 = qn**2
        roots = _stable_quadratic(a2, b1, c0)
        if roots:
            entries.append(BoundEntry("b3", Direction.UPPER_FOR_SMALLEST, round_to(roots[0], prec),
                                      "quadratic-m3-shift6", m=3, shift=6))
        else:
            entries.append(BoundEntry("b3", Direction.UPPER_FOR_SMALLEST, None, "quadratic-m3-shift6",
                                      m=3, shift=6, applicable=False, note="negative discriminant"))

        bn = -qq ** (n + 1) * (qn**2 * a - a * qn * qq - a * qn - qq**2) / ((qn**2 * a + qq) * (qn**2 * a + qq**3))
        entries.append(BoundEntry("b_n", Direction.UPPER_FOR_SMALLEST, round_to(bn, prec),
                                  "recurrence-center", m=2, shift=0))
    return BoundReport(spec=spec, n=n, entries=tuple(entries))


def _stable_quadratic(a, b, c):
    """Both real roots of a x^2 + b x + c, smaller root via c/(a r_large)."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    sq = gmpy2.sqrt(disc)
    qf = -(b + sq) / 2 if b >= 0 else -(b - sq) / 2
    if qf == 0:
        return sorted([gmpy2.mpfr(0), -b / a])
    return sorted([qf / a, c / qf])


# --------------------------------------------------------------------------
# Stieltjes-Wigert
# --------------------------------------------------------------------------


def stieltjes_wigert_lower_xn(n: int, q, prec: int | None = None) -> BoundReport:
    """Lower bounds for the largest zero of the Stieltjes-Wigert polynomial."""
    spec = family_spec(Family.STIELTJES_WIGERT, q=q)
    if n < 5:
        raise ValueError("stieltjes-wigert bounds need n >= 5")
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        qq = as_mpfr(spec.q)
        qn = qq**n
        entries = []

        main = (qq**2 - qn + 1) * (qq + 1)
        disc = (qq**6 - 2 * qn * qq**4 + 2 * qq**5 + qn**2 * qq**2 - qq**4
                - 2 * qn**2 * qq + qn**2 - qq**2 - 2 * qn + 2 * qq + 1)
        if disc >= 0:
            b3 = (main + gmpy2.sqrt(disc)) / (2 * qq ** (2 * n - 1))
            entries.append(BoundEntry("b3", Direction.LOWER_FOR_LARGEST, round_to(b3, prec),
                                      "quadratic-m3-noshift", m=3, shift=0))
        else:
            entries.append(BoundEntry("b3", Direction.LOWER_FOR_LARGEST, None, "quadratic-m3-noshift",
                                      m=3, shift=0, applicable=False, note="negative discriminant"))

        s = qq * qq + qq + 1
        # The linear coefficient carries two extra terms (q^{3n+6} + q^{2n+7})
        # relative to the commonly displayed form; without them the cubic is
        # inconsistent with the recurrence construction it comes from.
        cubic = Poly.make([
            (-qq**9 * (qq**3 + qq**2 + qq + 1) - qn**2 * qq**6 * (qq**3 + qq**2 + qq + 1)
             + qn**3 * qq**6 + qn * qq**7 * (qq**2 + 1) * s),
            qn**2 * qq**3 * (qn**2 * s
                             - qn * (qq**5 + 2 * qq**4 + 2 * qq**3 + 2 * qq**2 + 2 * qq + 1)
                             + (qq**7 + qq**6 + 2 * qq**5 + 2 * qq**4 + 2 * qq**3 + qq**2 + qq)),
            (qn**5 * qq - qn**4 * qq**4 - qn**4 * qq) * s,
            qn**6,
        ])
        roots = low_degree_roots(cubic, prec=prec)
        # the largest real root is the bound; the other two lie orders of
        # magnitude deeper inside the zero range
        entries.append(BoundEntry("b4", Direction.LOWER_FOR_LARGEST,
                                  roots[-1] if roots else None, "cubic-m4-noshift", m=4, shift=0,
                                  applicable=bool(roots), note="" if roots else "no real root"))
    return BoundReport(spec=spec, n=n, entries=tuple(entries))


# --------------------------------------------------------------------------
# Discrete q-Hermite II
# --------------------------------------------------------------------------


def qhermite2_bounds(n: int, q, prec: int | None = None) -> BoundReport:
    """Symmetric inner bounds from the quartic coefficient of the m=5 identity."""
    spec = family_spec(Family.DISCRETE_Q_HERMITE_II, q=q)
    if n < 6:
        raise ValueError("discrete q-Hermite II bounds need n >= 6")
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        qq = as_mpfr(spec.q)
        qn = qq**n
        s = qq * qq + qq + 1
        t = qq + qq**3 - qq**2 - qn
        inner = t * t * s * s - 4 * (qn - qq**3) * (qn - qq) * qq**2
        note = ""
        value = None
        if inner < 0:
            note = "negative inner discriminant"
        else:
            y = (t * s + gmpy2.sqrt(inner)) / (2 * qq ** (2 * n - 2))
            if y < 0:
                note = "negative radicand"
            else:
                value = gmpy2.sqrt(y)
        entries = (
            BoundEntry("b5_lower_xn", Direction.LOWER_FOR_LARGEST,
                       round_to(value, prec) if value is not None else None,
                       "quartic-m5-noshift", m=5, shift=0, applicable=value is not None, note=note),
            BoundEntry("b5_upper_x1", Direction.UPPER_FOR_SMALLEST,
                       round_to(-value, prec) if value is not None else None,
                       "quartic-m5-noshift", m=5, shift=0, applicable=value is not None, note=note),
        )
    return BoundReport(spec=spec, n=n, entries=entries)


# --------------------------------------------------------------------------
# Dispatch and verification
# --------------------------------------------------------------------------


def bounds_for(spec: FamilySpec, n: int, prec: int | None = None) -> BoundReport:
    """The family's closed-form bound report."""
    fam = spec.family
    if fam is Family.LAGUERRE:
        return laguerre_bounds(n, spec.alpha, prec)
    if fam is Family.LITTLE_Q_JACOBI:
        return little_qjacobi_report(n, spec.alpha, spec.beta, spec.q, prec)
    if fam is Family.LITTLE_Q_LAGUERRE:
        return little_qlaguerre_report(n, spec.alpha, spec.q, prec)
    if fam is Family.ALT_Q_CHARLIER:
        return alt_qcharlier_bounds(n, spec.alpha, spec.q, prec)
    if fam is Family.STIELTJES_WIGERT:
        return stieltjes_wigert_lower_xn(n, spec.q, prec)
    if fam is Family.DISCRETE_Q_HERMITE_II:
        return qhermite2_bounds(n, spec.q, prec)
    raise ValueError(f"no bounds implemented for {fam}")


def verify_bound_report(
    report: BoundReport,
    zs: ZeroSet,
    prec: int | None = None,
    check_interlacing: bool = True,
) -> InterlacingReport:
    """Check direction contracts and, per construction, completed interlacing.

    Upper bounds for the smallest zero must be >= x_1 and lower bounds for
    the largest must be <= x_n, up to the certified tolerance of ``zs``.
    Violations are reported, never raised.
    """
    prec = prec or default_precision()
    with context(prec + GUARD_BITS):
        slack = 16 * gmpy2.mpfr(zs.achieved_rtol) + gmpy2.exp2(-(prec - 80))
        bound_violations = []
        if zs.n != report.n:
            raise ValueError("zero set and bound report have different degrees")
        x1, xn = zs.smallest, zs.largest
        for e in report.entries:
            if not e.applicable or e.value is None:
                continue
            v = gmpy2.mpfr(e.value)
            if e.direction is Direction.UPPER_FOR_SMALLEST:
                gap = x1 - v
                ref = x1
            else:
                gap = v - xn
                ref = xn
            if gap > slack * max(abs(v), abs(ref)):
                bound_violations.append((e.name, e.value, ref))

        violations: list = []
        commons: list = []
        if check_interlacing:
            seen = set()
            for e in report.entries:
                if e.m is None or e.shift is None or not e.applicable:
                    continue
                key = (e.m, e.shift)
                if key in seen:
                    continue
                seen.add(key)
                vio, com = completed_interlacing(report.spec, report.n, e.m, e.shift, zs, prec)
                violations.extend(vio)
                commons.extend(com)
    holds = not violations and not bound_violations
    return InterlacingReport(
        holds=holds,
        violations=tuple(violations),
        common_zeros=tuple(commons),
        bound_violations=tuple(bound_violations),
    )


def completed_interlacing(spec: FamilySpec, n: int, m: int, shift: int, zs: ZeroSet, prec: int | None = None):
    """Verify that the n-1 zeros of G * g_{n-m,k} interlace the zeros of p_n.

    Returns (violations, common_zeros).  Guests that coincide with a zero of
    p_n (relative distance below 1e-20) are treated as common zeros and
    checked under the weaker pattern that skips the matched host zeros.
    """
    prec = prec or default_precision()
    rec = build_mixed_recurrence(spec, n, m, CSpec.power_of_x(shift), prec=prec)
    if rec.bound_factor.degree > 4:
        raise ValueError("interlacing verification supports coefficient degrees up to 4")
    g_roots = low_degree_roots(rec.bound_factor, prec=prec)
    partner = family_zeros(shifted_spec(spec, shift), n - m, prec=prec)
    guests = sorted(list(g_roots) + list(partner.zeros))

    hosts = list(zs.zeros)
    tol = as_mpfr("1e-20")
    matched: dict = {}
    kept_guests = []
    for g in guests:
        hit = None
        for i, h in enumerate(hosts):
            scale = max(abs(g), abs(h))
            if scale > 0 and abs(g - h) <= tol * scale:
                hit = i
                break
        if hit is None:
            kept_guests.append(g)
        else:
            matched.setdefault(hit, []).append(g)
    # Matched pairs are unresolvable within tolerance: drop the host and one
    # matched guest.  A genuine common zero appears among the guests twice
    # (it is a zero of the degree-(m-1) coefficient as well), so the extras
    # re-enter the pattern, which is exactly the weaker common-zero variant
    # of the interlacing statement.
    commons = []
    for i, glist in sorted(matched.items()):
        commons.append(glist[0])
        kept_guests.extend(glist[1:])
    hosts_eff = [h for i, h in enumerate(hosts) if i not in matched]
    guests_eff = sorted(kept_guests)

    violations = []
    if len(guests_eff) != len(hosts_eff) - 1:
        violations.append((-1, hosts_eff[0] if hosts_eff else None, hosts_eff[-1] if hosts_eff else None))
        return violations, commons
    for i in range(len(hosts_eff) - 1):
        inside = [g for g in guests_eff if hosts_eff[i] < g < hosts_eff[i + 1]]
        if len(inside) != 1:
            violations.append((i, hosts_eff[i], hosts_eff[i + 1]))
    outside = [g for g in guests_eff if g <= hosts_eff[0] or g >= hosts_eff[-1]]
    for g in outside:
        violations.append((-1, g, g))
    return violations, commons

"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

The reference-table criteria apply the half-ulp-of-the-printed-figure rule
verbatim to every computable cell.  Fourteen cells across tables 1-5 are
printed in the source tables with truncated or mis-computed final digits
(multi-route evidence in tests/test_source_discrepancies.py), so the
corresponding criteria report honest failures on exactly those cells while
every other cell passes.  Table 6 reproduces in full.
"""

import random
import time

import gmpy2

from conftest import FAMILY_GRID, FAMILY_POINTS, sample_xs, spec_for
from ortho_bounds import (
    CSpec,
    Family,
    alt_qcharlier_bounds,
    associated_eval,
    beardon_residual_scaled,
    bounds_for,
    build_mixed_recurrence,
    corollary_inner_bounds,
    eval_monic,
    family_spec,
    family_zeros,
    laguerre_bounds,
    little_qjacobi_upper_x1,
    low_degree_roots,
    mixed_recurrence_residual,
    qhermite2_bounds,
    recurrence_table,
    run_table,
    stieltjes_wigert_lower_xn,
    verify_bound_report,
)
from ortho_bounds.bigfloat import rel_diff


def _clear_caches():
    import ortho_bounds.christoffel as christoffel
    import ortho_bounds.families as families
    import ortho_bounds.zeros as zeros

    zeros._family_zeros_cached.cache_clear()
    families._recurrence_table_cached.cache_clear()
    christoffel._cofactors_cached.cache_clear()


def _table_failures(result):
    out = []
    for row in result.rows:
        params = ",".join(f"{k}={v}" for k, v in row.params)
        for c in row.cells:
            if c.status == "fail":
                tag = f" [{c.note}]" if c.note else ""
                out.append(f"[{params}] {c.name}: printed={c.printed} computed={c.computed} "
                           f"err={c.err_ulps:.3f} printed-units{tag}")
    return out


def _report(name, ok, detail=""):
    line = f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)


def _assert_table(name, result, extra=""):
    failures = _table_failures(result)
    _report(name, not failures, extra if not failures else f"{len(failures)} cell(s) off: " + "; ".join(failures))
    assert not failures, (
        f"{len(failures)} cell(s) differ from the printed reference figures by more than "
        f"half a unit in the last printed digit:\n  " + "\n  ".join(failures) +
        "\nRecomputed values are pinned by independent routes in tests/test_source_discrepancies.py; "
        "the discrepancies lie in the reference figures themselves."
    )


def test_criterion_1_table1_laguerre():
    _clear_caches()
    t0 = time.perf_counter()
    result = run_table(1, prec=256)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60, f"table 1 took {elapsed:.1f}s at 256-bit precision"
    _assert_table("table-1-laguerre", result, extra=f"{elapsed:.1f}s")


def test_criterion_2_table2_little_qjacobi():
    _clear_caches()
    t0 = time.perf_counter()
    result = run_table(2, prec=256)
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"table 2 took {elapsed:.1f}s"
    _assert_table("table-2-little-q-jacobi", result, extra=f"{elapsed:.1f}s")


def test_criterion_3_tables_3_4_alt_qcharlier():
    res3 = run_table(3, prec=256)
    res4 = run_table(4, prec=256)
    failures = _table_failures(res3) + _table_failures(res4)
    _report("tables-3-4-alt-q-charlier", not failures,
            "" if not failures else f"{len(failures)} cell(s) off")
    assert not failures, (
        "cells differ from the printed reference figures beyond half-ulp:\n  "
        + "\n  ".join(failures)
        + "\nSee tests/test_source_discrepancies.py for the multi-route evidence."
    )


def test_criterion_4_table5_stieltjes_wigert():
    result = run_table(5, prec=256)
    # the ambiguous cubic-root column: the value belongs to the LARGEST real
    # root of the cubic; its other roots are orders of magnitude smaller
    roots = low_degree_roots(
        build_mixed_recurrence(family_spec("stieltjes-wigert", q="0.5"), 10, 4,
                               CSpec.power_of_x(0), prec=320).bound_factor, prec=320)
    assert len(roots) == 3
    assert float(rel_diff(roots[-1], "8.3946795e5")) < 1e-7
    assert float(roots[0]) < 1e5  # the smallest root is nowhere near the table value
    _assert_table("table-5-stieltjes-wigert", result)


def test_criterion_5_table6_qhermite2():
    result = run_table(6, prec=256)
    _assert_table("table-6-discrete-q-hermite-2", result)


def test_criterion_6_identity_suite():
    prec = 256
    bound = 2.0 ** (-prec + 64)
    worst = 0.0
    count = 0
    for fam, point in FAMILY_POINTS.items():
        spec = spec_for(fam, point)
        rng = random.Random(hash(fam.value) & 0xFFFF)
        for n in range(3, 26):
            xs = sample_xs(rng, spec.support(), 10)
            for m in range(2, n):
                for x in xs:
                    residual, scale = beardon_residual_scaled(spec, n, m, x, prec=prec)
                    if scale > 0:
                        ratio = float(abs(residual) / scale)
                        worst = max(worst, ratio)
                        count += 1
                        assert ratio <= bound, (fam, n, m, x, ratio)
    # full-degree associated polynomial coincides with the polynomial itself
    for fam, point in FAMILY_POINTS.items():
        spec = spec_for(fam, point)
        rng = random.Random(4242)
        for x in sample_xs(rng, spec.support(), 20):
            lhs = associated_eval(spec, 10, 10, x, prec=prec)
            rhs = eval_monic(spec, 10, x, prec=prec)
            assert float(rel_diff(lhs, rhs)) < 2.0**-180
    # the six determinant-builder configurations
    configs = [
        (family_spec("laguerre", alpha="-0.5"), 10, 3, 6),
        (family_spec("laguerre", alpha="-0.5"), 10, 4, 8),
        (family_spec("laguerre", alpha="-0.5"), 10, 4, 0),
        (family_spec("little-q-jacobi", alpha="0.5", beta="1", q="0.6"), 10, 2, 4),
        (family_spec("alt-q-charlier", alpha="0.5", q="0.55"), 10, 2, 4),
        (family_spec("alt-q-charlier", alpha="0.5", q="0.55"), 10, 3, 6),
    ]
    for spec, n, m, k in configs:
        c = CSpec.power_of_x(k)
        rec = build_mixed_recurrence(spec, n, m, c, prec=prec)
        rng = random.Random(99)
        for x in sample_xs(rng, spec.support(), 10):
            residual, scale = mixed_recurrence_residual(spec, rec, c, x, prec=prec)
            if scale > 0:
                assert float(abs(residual) / scale) <= bound
    _report("identity-suite", True, f"{count} mixed-identity residuals, worst {worst:.2e}")


def test_criterion_7_closed_form_builder_equivalence():
    tol = 1e-25
    checks = 0

    def close(a, b):
        nonlocal checks
        checks += 1
        err = float(rel_diff(a, b))
        assert err < tol, f"closed form vs builder differ by {err:.2e}"

    for n, alpha in ((10, "-0.5"), (10, "10.0"), (100, "10.0"), (100, "-0.5")):
        prec = 320
        spec = family_spec("laguerre", alpha=alpha)
        rep = laguerre_bounds(n, alpha, prec=prec)
        r3 = low_degree_roots(build_mixed_recurrence(spec, n, 3, CSpec.power_of_x(6), prec=prec).bound_factor, prec)
        close(rep.value("b3_minus"), r3[0])
        close(rep.value("b3_plus"), r3[-1])
        r4 = low_degree_roots(build_mixed_recurrence(spec, n, 4, CSpec.power_of_x(8), prec=prec).bound_factor, prec)
        close(rep.value("b4_upper_x1"), r4[0])
        r40 = low_degree_roots(build_mixed_recurrence(spec, n, 4, CSpec.power_of_x(0), prec=prec).bound_factor, prec)
        close(rep.value("b4_lower_xn"), r40[-1])
    for n, beta, q in ((10, "1", "0.6"), (30, "-10", "0.6"), (100, "-10", "0.9")):
        prec = 512 if n >= 70 else 320
        spec = family_spec("little-q-jacobi", alpha="0.5", beta=beta, q=q)
        root = low_degree_roots(build_mixed_recurrence(spec, n, 2, CSpec.power_of_x(4), prec=prec).bound_factor, prec)[0]
        close(little_qjacobi_upper_x1(n, "0.5", beta, q, prec=prec), root)
    for n, alpha, q in ((10, "0.5", "0.55"), (10, "10", "0.99"), (10, "100", "0.45"),
                        (70, "10", "0.45"), (70, "100", "0.8")):
        prec = 512 if n >= 70 else 320
        spec = family_spec("alt-q-charlier", alpha=alpha, q=q)
        rep = alt_qcharlier_bounds(n, alpha, q, prec=prec)
        close(rep.value("b2"),
              low_degree_roots(build_mixed_recurrence(spec, n, 2, CSpec.power_of_x(4), prec=prec).bound_factor, prec)[0])
        close(rep.value("b3"),
              low_degree_roots(build_mixed_recurrence(spec, n, 3, CSpec.power_of_x(6), prec=prec).bound_factor, prec)[0])
        close(rep.value("b_n"),
              low_degree_roots(build_mixed_recurrence(spec, n, 2, CSpec.power_of_x(0), prec=prec).bound_factor, prec)[0])
    for n, q in ((10, "0.5"), (10, "0.9"), (70, "0.5"), (70, "0.9")):
        prec = 512 if n >= 70 else 320
        spec = family_spec("stieltjes-wigert", q=q)
        rep = stieltjes_wigert_lower_xn(n, q, prec=prec)
        close(rep.value("b3"), corollary_inner_bounds(spec, n, 3, prec=prec)[1])
        close(rep.value("b4"), corollary_inner_bounds(spec, n, 4, prec=prec)[1])
    for n, q in ((10, "0.5"), (10, "0.98"), (100, "0.5"), (100, "0.98")):
        prec = 512 if n >= 70 else 320
        spec = family_spec("qhermite2", q=q)
        rep = qhermite2_bounds(n, q, prec=prec)
        close(rep.value("b5_lower_xn"), corollary_inner_bounds(spec, n, 5, prec=prec)[1])
    _report("closed-form-builder-equivalence", True, f"{checks} bound values at 1e-25")


def test_criterion_8_property_suite():
    checked_bounds = 0
    for fam in Family:
        for point in FAMILY_GRID[fam]:
            spec = spec_for(fam, point)
            _, ls = recurrence_table(spec, 50)
            assert all(ls[n] > 0 for n in range(2, 51)), (fam, point)
            lo_sup, hi_sup = spec.support()
            for n in (6, 10, 20):
                zs = family_zeros(spec, n, rtol="1e-25")
                prev = family_zeros(spec, n - 1, rtol="1e-25")
                # realness and simplicity come with the certified bracketing;
                # ZeroSet enforces strict ordering already
                assert zs.n == n
                for z in zs.zeros:
                    if lo_sup is not None:
                        assert z > lo_sup
                    if hi_sup is not None:
                        assert z < hi_sup
                with gmpy2.context(precision=320):
                    slack = 4 * (gmpy2.mpfr(zs.achieved_rtol) + gmpy2.mpfr(prev.achieved_rtol))
                    for i in range(n - 1):
                        a, b, c = zs.zeros[i], prev.zeros[i], zs.zeros[i + 1]
                        assert a - b <= slack * max(abs(a), abs(b)), (fam, point, n, i)
                        assert b - c <= slack * max(abs(b), abs(c)), (fam, point, n, i)
                report = bounds_for(spec, n, prec=256)
                result = verify_bound_report(report, zs, prec=256)
                assert not result.bound_violations, (fam, point, n, result.bound_violations)
                assert not result.violations, (fam, point, n, result.violations)
                checked_bounds += sum(1 for e in report.entries if e.applicable)
    _report("property-suite", True, f"{checked_bounds} bound entries sandwiched and interlaced")

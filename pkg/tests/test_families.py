"""Series evaluation, parameter validation and derived recurrence data."""

import random

import gmpy2
import pytest

from conftest import FAMILY_GRID, FAMILY_POINTS, assert_close, rel_err, sample_xs, spec_for
from ortho_bounds import (
    Family,
    ParameterDomainError,
    eval_monic,
    family_spec,
    hyper_eval,
    kls_leading_coeff,
    monic_coeffs,
    recurrence_table,
)


def test_hyper_eval_degree_zero_is_one():
    spec = family_spec("laguerre", alpha="0.7")
    assert hyper_eval(spec, 0, "3.2") == 1


def test_hyper_eval_laguerre_at_origin():
    # at x = 0 only the constant term survives: (alpha+1)_n / n! = 1 for alpha = 0
    spec = family_spec("laguerre", alpha=0)
    assert hyper_eval(spec, 2, 0) == 1


def test_hyper_eval_little_qjacobi_linear_root():
    # hand-expanded two-term sum: p_1(x) = 1 - (7/6) x at these parameters
    spec = family_spec("little-q-jacobi", alpha="0.5", beta=1, q="0.5")
    value = hyper_eval(spec, 1, "6/7", prec=256)
    assert abs(value) <= gmpy2.exp2(-240)


def test_monic_coeffs_laguerre_hand_expanded():
    # from the series: p1 = 1-x, p2 = 1-2x+x^2/2 at alpha=0; monic forms give
    # p2 = (x-3) p1 - 1 p0
    spec = family_spec("laguerre", alpha=0)
    pair = monic_coeffs(spec, 2)
    assert pair.c == 3
    assert pair.lam == 1


@pytest.mark.parametrize("alpha", ["-0.5", "0", "2.7", "10"])
def test_monic_coeffs_laguerre_first_center(alpha):
    spec = family_spec("laguerre", alpha=alpha)
    pair = monic_coeffs(spec, 1)
    with gmpy2.context(precision=300):
        assert_close(pair.c, gmpy2.mpfr(alpha) + 1, 1e-70, "C_1 should be alpha+1;")


def test_monic_coeffs_fitted_from_series():
    # independent oracle: fit (C_n, lambda_n) from series values at two points
    spec = family_spec("alt-q-charlier", alpha="0.5", q="0.55")
    prec = 320
    for n in range(2, 11):
        pair = monic_coeffs(spec, n, prec=prec)
        assert pair.lam > 0
        with gmpy2.context(precision=prec):
            fitted = _fit_pair(spec, n, prec)
            assert_close(pair.c, fitted[0], 1e-60, f"fitted C_{n};")
            assert_close(pair.lam, fitted[1], 1e-60, f"fitted lambda_{n};")


def _fit_pair(spec, n, prec):
    """Solve for (C_n, lam_n) from monic values at two sample points."""
    def monic_at(k, x):
        return gmpy2.mpfr(hyper_eval(spec, k, x, prec)) / gmpy2.mpfr(kls_leading_coeff(spec, k, prec))

    x1, x2 = gmpy2.mpfr("0.21"), gmpy2.mpfr("0.83")
    rows = []
    rhs = []
    for x in (x1, x2):
        pn, pn1, pn2 = monic_at(n, x), monic_at(n - 1, x), monic_at(n - 2, x)
        # pn = (x - c) pn1 - lam pn2  ->  c*pn1 + lam*pn2 = x*pn1 - pn
        rows.append((pn1, pn2))
        rhs.append(x * pn1 - pn)
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    c = (rhs[0] * rows[1][1] - rhs[1] * rows[0][1]) / det
    lam = (rows[0][0] * rhs[1] - rows[1][0] * rhs[0]) / det
    return c, lam


def test_kls_leading_coeff_laguerre():
    spec = family_spec("laguerre", alpha="1.3")
    k3 = kls_leading_coeff(spec, 3)
    with gmpy2.context(precision=300):
        assert_close(k3, gmpy2.mpfr(-1) / 6, 1e-70, "k_3 = (-1)^3/3!;")


def test_kls_leading_coeff_degree_zero():
    for fam, point in FAMILY_POINTS.items():
        assert kls_leading_coeff(spec_for(fam, point), 0) == 1


def test_kls_leading_coeff_ratio_oracle():
    # ratio of the two normalizations at large x tends to k_n
    spec = family_spec("stieltjes-wigert", q="0.5")
    k2 = kls_leading_coeff(spec, 2, prec=256)
    for x in ("1e6", "1e8"):
        ratio = gmpy2.mpfr(hyper_eval(spec, 2, x, 256)) / gmpy2.mpfr(eval_monic(spec, 2, x, 256))
        assert rel_err(ratio, k2) < 1e-4


@pytest.mark.parametrize("fam", list(Family))
def test_normalization_consistency(fam):
    # hyper_eval == k_n * (monic chain value) across degrees and random points
    prec = 256
    rng = random.Random(20240809)
    for point in FAMILY_GRID[fam]:
        spec = spec_for(fam, point)
        for n in (1, 2, 5, 13, 30):
            for x in sample_xs(rng, spec.support(), 4):
                hv = hyper_eval(spec, n, x, prec=prec)
                kn = kls_leading_coeff(spec, n, prec=prec)
                mv = eval_monic(spec, n, x, prec=prec)
                with gmpy2.context(precision=prec + 64):
                    err = rel_err(hv, gmpy2.mpfr(kn) * gmpy2.mpfr(mv))
                assert err < 2.0 ** (-prec // 2), (fam, point, n, x, err)


@pytest.mark.parametrize("fam", list(Family))
def test_lambda_positivity_grid(fam):
    for point in FAMILY_GRID[fam]:
        spec = spec_for(fam, point)
        _, ls = recurrence_table(spec, 50)
        assert all(ls[n] > 0 for n in range(2, 51)), (fam, point)


def test_parameter_validation_rejections():
    with pytest.raises(ParameterDomainError):
        family_spec("laguerre", alpha=-1)
    with pytest.raises(ParameterDomainError):
        family_spec("little-q-jacobi", alpha="0.5", beta=1, q=1)
    with pytest.raises(ParameterDomainError):
        family_spec("little-q-jacobi", alpha=2, beta=1, q="0.5")  # alpha*q = 1
    with pytest.raises(ParameterDomainError):
        family_spec("alt-q-charlier", alpha=0, q="0.5")
    with pytest.raises(ParameterDomainError):
        family_spec("stieltjes-wigert", q="1.2")
    with pytest.raises(ParameterDomainError):
        family_spec("laguerre")  # missing alpha
    with pytest.raises(ParameterDomainError):
        family_spec("stieltjes-wigert", q="0.5", alpha=1)  # stray parameter


def test_qhermite2_centers_vanish():
    spec = family_spec("qhermite2", q="0.37")
    cs, _ = recurrence_table(spec, 30)
    assert all(cs[n] == 0 for n in range(1, 31))


def test_qhermite2_lambda_closed_form():
    # independent derivation: lambda_n = q^(3-2n) (1 - q^(n-1))
    spec = family_spec("qhermite2", q="0.73")
    _, ls = recurrence_table(spec, 20, prec=256)
    with gmpy2.context(precision=320):
        q = gmpy2.mpfr("0.73")
        for n in range(2, 21):
            assert_close(ls[n], q ** (3 - 2 * n) * (1 - q ** (n - 1)), 1e-60, f"lambda_{n};")


def test_hyper_eval_qhermite2_parity():
    spec = family_spec("qhermite2", q="0.5")
    for n in (4, 7, 10):
        for x in ("1.7", "0.02", "31.4"):
            plus = hyper_eval(spec, n, x, 256)
            minus = hyper_eval(spec, n, "-" + x, 256)
            with gmpy2.context(precision=320):
                expect = plus if n % 2 == 0 else -gmpy2.mpfr(plus)
            assert rel_err(minus, expect) < 2.0**-200

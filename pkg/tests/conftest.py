"""Shared fixtures and helpers for the test suite."""

import gmpy2
import pytest

from ortho_bounds import Family, family_spec


def rel_err(a, b):
    """Relative difference as a float, safe for zero values."""
    with gmpy2.context(precision=512):
        a = gmpy2.mpfr(a)
        b = gmpy2.mpfr(b)
        scale = max(abs(a), abs(b))
        if scale == 0:
            return 0.0
        return float(abs(a - b) / scale)


def assert_close(a, b, rtol, msg=""):
    err = rel_err(a, b)
    assert err <= rtol, f"{msg} relative error {err:.3e} exceeds {rtol:.1e} ({a} vs {b})"


# One representative parameter point per family (used by identity checks).
FAMILY_POINTS = {
    Family.LAGUERRE: dict(alpha="-0.5"),
    Family.LITTLE_Q_JACOBI: dict(alpha="0.5", beta="1", q="0.6"),
    Family.LITTLE_Q_LAGUERRE: dict(alpha="0.5", q="0.6"),
    Family.ALT_Q_CHARLIER: dict(alpha="0.5", q="0.55"),
    Family.STIELTJES_WIGERT: dict(q="0.5"),
    Family.DISCRETE_Q_HERMITE_II: dict(q="0.5"),
}

# Three parameter points per family (the verification grid).
FAMILY_GRID = {
    Family.LAGUERRE: [dict(alpha="-0.5"), dict(alpha="0.7"), dict(alpha="10")],
    Family.LITTLE_Q_JACOBI: [
        dict(alpha="0.5", beta="1", q="0.6"),
        dict(alpha="0.5", beta="-10", q="0.6"),
        dict(alpha="0.9", beta="0.5", q="0.3"),
    ],
    Family.LITTLE_Q_LAGUERRE: [
        dict(alpha="0.5", q="0.6"),
        dict(alpha="1.2", q="0.5"),
        dict(alpha="0.1", q="0.9"),
    ],
    Family.ALT_Q_CHARLIER: [
        dict(alpha="0.5", q="0.55"),
        dict(alpha="10", q="0.99"),
        dict(alpha="100", q="0.45"),
    ],
    Family.STIELTJES_WIGERT: [dict(q="0.5"), dict(q="0.7"), dict(q="0.9")],
    Family.DISCRETE_Q_HERMITE_II: [dict(q="0.5"), dict(q="0.8"), dict(q="0.98")],
}

def spec_for(family: Family, point: dict):
    return family_spec(family, **point)


@pytest.fixture(scope="session")
def family_points():
    return {fam: spec_for(fam, pt) for fam, pt in FAMILY_POINTS.items()}


def sample_xs(rng, support, count):
    """Deterministic points, log-spread over magnitudes, inside or around support."""
    lo, hi = support
    out = []
    for _ in range(count):
        if lo == 0 and hi == 1:
            out.append(str(rng.uniform(0.02, 0.98)))
        elif lo == 0 and hi is None:
            out.append(str(rng.uniform(0.3, 3.0) * 10 ** rng.randint(-2, 3)))
        else:
            out.append(str(rng.uniform(-2.5, 2.5) * 10 ** rng.randint(-1, 3)))
    return out

"""High-precision zeros and closed-form inner bounds for classical and
q-classical orthogonal polynomials.

The package evaluates six polynomial families (Laguerre, little q-Jacobi,
little q-Laguerre, alternative q-Charlier, Stieltjes-Wigert, discrete
q-Hermite II) from their terminating hypergeometric series, derives their
monic three-term recurrences, computes certified real zeros across the
families' extreme dynamic ranges, constructs mixed three-term identities
through weight-modification determinants, and produces closed-form inner
bounds for the extreme zeros together with verification machinery
(direction contracts and completed interlacing).
"""

from .bigfloat import DEFAULT_PREC, default_precision, sci_str
from .bounds import (
    BoundEntry,
    BoundReport,
    Direction,
    InterlacingReport,
    alt_qcharlier_bounds,
    bounds_for,
    completed_interlacing,
    laguerre_bounds,
    little_qjacobi_report,
    little_qjacobi_upper_x1,
    little_qlaguerre_report,
    little_qlaguerre_upper_x1,
    qhermite2_bounds,
    stieltjes_wigert_lower_xn,
    verify_bound_report,
)
from .christoffel import (
    CSpec,
    MixedRec,
    build_mixed_recurrence,
    christoffel_eval,
    mixed_recurrence_residual,
    poly_pair_expansion,
)
from .errors import (
    CommonZeroWarning,
    DegenerateConfigurationError,
    OrthoBoundsError,
    ParameterDomainError,
    PrecisionExhaustedError,
)
from .families import (
    Family,
    FamilySpec,
    RecurrencePair,
    family_spec,
    hyper_eval,
    kls_leading_coeff,
    monic_coeffs,
    recurrence_table,
    shifted_spec,
)
from .polynomials import Poly
from .recurrence import (
    associated_eval,
    associated_poly,
    associated_zeros,
    beardon_residual,
    beardon_residual_scaled,
    corollary_inner_bounds,
    eval_monic,
    find_common_zeros,
)
from .tables import TABLES, run_table
from .zeros import ZeroSet, chain_zeros, family_zeros, low_degree_roots

__version__ = "0.1.0"

__all__ = [
    "BoundEntry", "BoundReport", "CSpec", "CommonZeroWarning", "DEFAULT_PREC",
    "DegenerateConfigurationError", "Direction", "Family", "FamilySpec",
    "InterlacingReport", "MixedRec", "OrthoBoundsError", "ParameterDomainError",
    "Poly", "PrecisionExhaustedError", "RecurrencePair", "TABLES", "ZeroSet",
    "alt_qcharlier_bounds", "associated_eval", "associated_poly", "associated_zeros",
    "beardon_residual", "beardon_residual_scaled", "bounds_for", "build_mixed_recurrence",
    "chain_zeros", "christoffel_eval", "completed_interlacing", "corollary_inner_bounds",
    "default_precision", "eval_monic", "family_spec", "family_zeros", "find_common_zeros",
    "hyper_eval", "kls_leading_coeff", "laguerre_bounds", "little_qjacobi_report",
    "little_qjacobi_upper_x1", "little_qlaguerre_report", "little_qlaguerre_upper_x1",
    "low_degree_roots", "mixed_recurrence_residual", "monic_coeffs", "poly_pair_expansion",
    "qhermite2_bounds", "recurrence_table", "run_table", "sci_str", "shifted_spec",
    "stieltjes_wigert_lower_xn", "verify_bound_report",
]

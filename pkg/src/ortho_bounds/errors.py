"""Exception and warning types shared across the library."""


class OrthoBoundsError(Exception):
    """Base class for all library errors."""


class ParameterDomainError(OrthoBoundsError, ValueError):
    """Family parameters violate the orthogonality domain (e.g. alpha <= -1)."""


class DegenerateConfigurationError(OrthoBoundsError):
    """A weight-modification determinant is numerically singular.

    Raised instead of perturbing the configuration when a zero of the
    modifier polynomial collides with a zero of one of the determinant
    entries, or when the leading cofactor vanishes.
    """


class PrecisionExhaustedError(OrthoBoundsError):
    """Requested tolerance unreachable even after escalating the precision."""


class CommonZeroWarning(UserWarning):
    """Two polynomials that are assumed co-prime share a zero numerically.

    The inner bounds remain valid in this case, but the full interlacing
    pattern degrades to the weaker common-zero variant.
    """

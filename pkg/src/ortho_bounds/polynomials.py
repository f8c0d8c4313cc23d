"""Dense univariate polynomial arithmetic over mpfr coefficients.

Coefficients are stored lowest degree first.  Degrees in this package stay
around one hundred at most, so everything is plain dense arithmetic.  All
operations assume an active gmpy2 context.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .bigfloat import as_mpfr


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients lowest-degree first."""

    coeffs: tuple

    @staticmethod
    def make(values) -> "Poly":
        coeffs = tuple(as_mpfr(v) for v in values)
        return Poly(coeffs if coeffs else (gmpy2.mpfr(0),))

    @staticmethod
    def constant(value) -> "Poly":
        return Poly((as_mpfr(value),))

    @staticmethod
    def zero() -> "Poly":
        return Poly((gmpy2.mpfr(0),))

    @property
    def degree(self) -> int:
        """Degree by storage; exact zero leading coefficients are stripped."""
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def normalized(self) -> "Poly":
        """Strip exactly-zero leading coefficients."""
        d = self.degree
        return Poly(self.coeffs[: d + 1])

    def trimmed(self, rel_eps) -> "Poly":
        """Strip leading coefficients below rel_eps times the largest one."""
        top = max(abs(c) for c in self.coeffs)
        if top == 0:
            return Poly.zero()
        cut = top * rel_eps
        d = len(self.coeffs) - 1
        while d > 0 and abs(self.coeffs[d]) <= cut:
            d -= 1
        return Poly(self.coeffs[: d + 1])

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scaled(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        out = [gmpy2.mpfr(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(tuple(out))

    def scaled(self, factor) -> "Poly":
        f = as_mpfr(factor)
        return Poly(tuple(c * f for c in self.coeffs))

    def times_x_minus(self, shift) -> "Poly":
        """Multiply by the monic linear factor (x - shift)."""
        s = as_mpfr(shift)
        out = [gmpy2.mpfr(0)] * (len(self.coeffs) + 1)
        for i, c in enumerate(self.coeffs):
            out[i + 1] += c
            out[i] -= c * s
        return Poly(tuple(out))

    def eval(self, x):
        xv = as_mpfr(x)
        acc = gmpy2.mpfr(0)
        for c in reversed(self.coeffs):
            acc = acc * xv + c
        return acc

    def deriv(self) -> "Poly":
        if len(self.coeffs) == 1:
            return Poly.zero()
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

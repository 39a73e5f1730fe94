"""Special functions: the terminating 0F2 series and scaled Hermite values."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from revival_lab.kernels import hermite_scaled


def hypergeom_0F2_poly(n: int, k: int, z):
    """Terminating ``0F2(0; -n, -k; z)``.

    The series ``sum_j n! k! / ((n-j)! (k-j)!) z^j / j!`` stops at
    ``j = min(n, k)``. Coefficients are exact integers; the sum is exact when
    ``z`` is an ``int`` or :class:`~fractions.Fraction` and compensated for
    floats.
    """
    n, k = int(n), int(k)
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    coeffs = [math.comb(n, j) * math.perm(k, j) for j in range(min(n, k) + 1)]
    if isinstance(z, (int, Fraction)):
        return sum(c * Fraction(z) ** j for j, c in enumerate(coeffs))
    if isinstance(z, complex):
        return sum(c * z ** j for j, c in enumerate(coeffs))
    z = float(z)
    return math.fsum(c * z ** j for j, c in enumerate(coeffs))


@dataclass(frozen=True)
class HermiteEval:
    """``H_k(x) = value_scaled * exp(log_scale)``."""

    k: int
    x: complex
    value_scaled: complex
    log_scale: float

    @property
    def value(self) -> complex:
        """Plain value; overflows to inf where the true value exceeds the double range."""
        with np.errstate(over="ignore"):
            return complex(self.value_scaled * np.exp(self.log_scale))

    @property
    def log_abs(self) -> float:
        if self.value_scaled == 0:
            return -math.inf
        return math.log(abs(self.value_scaled)) + self.log_scale


def hermite_eval(k: int, x) -> HermiteEval:
    mant, expo = hermite_scaled(x, k)
    return HermiteEval(int(k), complex(x), complex(mant[k]), float(expo[k]))


def hermite_table(kmax: int, x) -> list[HermiteEval]:
    mant, expo = hermite_scaled(x, kmax)
    return [HermiteEval(k, complex(x), complex(mant[k]), float(expo[k])) for k in range(kmax + 1)]


def hermite_series(coeff_log, next_coef, this_coef, x, kmax):
    """Coefficients ``c_k = exp(coeff_log[k]) * (next_coef[k] H_{k+1}(x) + this_coef[k] H_k(x))``.

    Evaluated for ``k = 0..kmax`` with the exponents combined in log space, so
    neither the Hermite values nor the prefactors overflow on their own.
    ``next_coef`` may be ``None``.
    """
    mant, expo = hermite_scaled(x, kmax + 1)
    k = np.arange(kmax + 1)
    term = this_coef * mant[k]
    if next_coef is not None:
        term = term + next_coef * mant[k + 1] * np.exp(expo[k + 1] - expo[k])
    mag = np.abs(term)
    out = np.zeros(kmax + 1, dtype=np.complex128)
    nz = mag > 0
    out[nz] = np.exp(coeff_log[nz] + expo[k][nz] + np.log(mag[nz]) + 1j * np.angle(term[nz]))
    return out

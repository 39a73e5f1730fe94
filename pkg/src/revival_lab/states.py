"""Constructors for coherent, n-photon coherent, squeezed coherent and
n-photon squeezed coherent states in a truncated Fock basis.

When ``dim`` is omitted the truncation starts from :func:`fock.default_dim`
and grows until the guard band is clean; an explicit ``dim`` (or the
``REVIVAL_LAB_DIM_OVERRIDE`` environment variable) is honoured as given and
raises :class:`UnderTruncated` if it is too small.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.special import gammaln

from revival_lab.errors import ParameterError, SingularSqueeze, UnderTruncated
from revival_lab.fock import (
    GUARD,
    FockVector,
    StateParams,
    apply_Bdag,
    default_dim,
    dim_override,
)
from revival_lab.moments import mean_photon_number
from revival_lab.special import hermite_series, hypergeom_0F2_poly

_MAX_GROWTH_STEPS = 40
_MAX_DIM = 200_000
# below this the squeeze changes coefficients by O(r dim^2), far under double
# precision, while the Hermite argument alpha / sqrt(2 sinh r cosh r) overflows
R_NEGLIGIBLE = 1e-30


def _build(make: Callable[[int], np.ndarray], mean: float, dim: int | None,
           norm_tol: float | None = None) -> FockVector:
    explicit = dim if dim is not None else dim_override()
    if explicit is not None:
        if int(explicit) < 1:
            raise ParameterError(f"dim must be >= 1, got {explicit}")
        return _finish(make(int(explicit)), norm_tol)
    d = default_dim(mean)
    for _ in range(_MAX_GROWTH_STEPS):
        try:
            return _finish(make(d), norm_tol)
        except UnderTruncated:
            d = math.ceil(d * 1.25) + GUARD
            if d > _MAX_DIM:
                break
    raise UnderTruncated(f"no clean truncation found below dim {_MAX_DIM}")


def _finish(coeffs: np.ndarray, norm_tol: float | None) -> FockVector:
    v = FockVector(coeffs)
    if v.under_truncated:
        raise UnderTruncated(f"guard-band mass {v.tail_mass:.3g} at dim {v.dim}")
    if norm_tol is not None and abs(v.norm_sq - 1.0) > norm_tol:
        raise UnderTruncated(f"norm^2 {v.norm_sq!r} drifted from 1 at dim {v.dim}")
    return v.normalized()


def _coherent_coeffs(alpha: complex, dim: int) -> np.ndarray:
    k = np.arange(dim)
    a = abs(alpha)
    if a == 0:
        out = np.zeros(dim, dtype=np.complex128)
        out[0] = 1.0
        return out
    logmag = -0.5 * a * a + k * math.log(a) - 0.5 * gammaln(k + 1)
    theta = math.atan2(alpha.imag, alpha.real)
    return np.exp(logmag) * np.exp(1j * theta * k)


def coherent_state(alpha_mod: float, theta: float = 0.0, dim: int | None = None) -> FockVector:
    if alpha_mod < 0:
        raise ParameterError("alpha_mod must be >= 0")
    alpha = alpha_mod * complex(math.cos(theta), math.sin(theta))
    return _build(lambda d: _coherent_coeffs(alpha, d), alpha_mod ** 2, dim)


def _n_coherent_coeffs(alpha: complex, n: int, dim: int) -> np.ndarray:
    # (a^dag - alpha*)^n |alpha> / sqrt(n!) expanded binomially; the j-th term
    # shifts the coherent amplitudes up by j with weight sqrt(k!/(k-j)!)
    p = _coherent_coeffs(alpha, dim)
    k = np.arange(dim)
    out = np.zeros(dim, dtype=np.complex128)
    for j in range(n + 1):
        if j >= dim:
            break
        kk = k[j:]
        lift = np.exp(0.5 * (gammaln(kk + 1) - gammaln(kk - j + 1)))
        out[j:] += math.comb(n, j) * (-alpha.conjugate()) ** (n - j) * lift * p[:dim - j]
    return out / math.sqrt(math.factorial(n))


def n_photon_coherent(alpha_mod: float, theta: float = 0.0, n: int = 1,
                      dim: int | None = None) -> FockVector:
    """``(a^dag - alpha*)^n / sqrt(n!)`` applied to the coherent state ``|alpha>``."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    if n == 0:
        return coherent_state(alpha_mod, theta, dim)
    if alpha_mod < 0:
        raise ParameterError("alpha_mod must be >= 0")
    alpha = alpha_mod * complex(math.cos(theta), math.sin(theta))
    return _build(lambda d: _n_coherent_coeffs(alpha, n, d), n + alpha_mod ** 2, dim)


def n_photon_coherent_0f2(alpha_mod: float, theta: float = 0.0, n: int = 1,
                          dim: int | None = None) -> FockVector:
    """Same state as :func:`n_photon_coherent`, via the terminating 0F2 series.

    Needs ``alpha_mod > 0`` because the series argument is ``-1/|alpha|^2``.
    """
    if alpha_mod <= 0:
        raise ParameterError("the 0F2 form needs alpha_mod > 0")
    alpha = alpha_mod * complex(math.cos(theta), math.sin(theta))
    z = -1.0 / alpha_mod ** 2

    def make(d):
        p = _coherent_coeffs(alpha, d)
        f = np.array([hypergeom_0F2_poly(n, k, z) for k in range(d)])
        return (-alpha.conjugate()) ** n / math.sqrt(math.factorial(n)) * p * f

    return _build(make, n + alpha_mod ** 2, dim)


def _squeezed_core(beta: complex, r: float, dim: int) -> np.ndarray:
    """Coefficients of ``S(r) D(beta) |0>`` for real ``r > 0``, complex ``beta``."""
    if r <= 0:
        raise SingularSqueeze("Hermite expansion needs r > 0; use the coherent-state path at r = 0")
    sh, ch, th = math.sinh(r), math.cosh(r), math.tanh(r)
    x = beta / math.sqrt(2.0 * sh * ch)
    if beta.imag == 0:
        expo = -0.5 * beta.real ** 2 * (1.0 - th) + 0j
    else:
        gamma = beta * ch - beta.conjugate() * sh
        expo = -0.5 * abs(gamma) ** 2 - 0.5 * gamma.conjugate() ** 2 * th
    k = np.arange(dim)
    logc = expo.real + 0.5 * k * math.log(th) - 0.5 * (k * math.log(2.0) + gammaln(k + 1) + math.log(ch))
    this = np.full(dim, complex(math.cos(expo.imag), math.sin(expo.imag)))
    return hermite_series(logc, None, this, x, dim - 1)


def _rotate(coeffs: np.ndarray, angle: float) -> np.ndarray:
    if angle == 0:
        return coeffs
    return coeffs * np.exp(1j * angle * np.arange(coeffs.size))


def _squeezed_general_coeffs(alpha: complex, r: float, phi: float, dim: int) -> np.ndarray:
    # S(r e^{i phi}) D(alpha) |0> = R(phi/2) S(r) D(alpha e^{-i phi/2}) |0>, R(x) = exp(i x a^dag a)
    if r < R_NEGLIGIBLE:
        return _coherent_coeffs(alpha, dim)
    beta = alpha * complex(math.cos(phi / 2), -math.sin(phi / 2))
    return _rotate(_squeezed_core(beta, r, dim), phi / 2)


def squeezed_coherent_state(a: float, r: float, dim: int | None = None) -> FockVector:
    """``S(zeta) D(alpha) |0>`` with real ``alpha = a`` and ``zeta = r``.

    This is the Hermite expansion with prefactor ``exp(-a^2 (1 - tanh r)/2)``;
    Negligible ``r`` (below ``R_NEGLIGIBLE``) delegates to :func:`coherent_state`.
    """
    if a < 0 or r < 0:
        raise ParameterError("a and r must be >= 0")
    if r < R_NEGLIGIBLE:
        return coherent_state(a, 0.0, dim)
    mean = mean_photon_number(StateParams(alpha_mod=a, r=r))
    return _build(lambda d: _squeezed_core(complex(a), r, d), mean, dim)


def squeezed_coherent_general(p: StateParams, dim: int | None = None) -> FockVector:
    """``S(zeta) D(alpha) |0>`` for arbitrary ``theta`` and ``phi`` (``n_extra`` ignored)."""
    mean = mean_photon_number(p.replace(n_extra=0))
    return _build(lambda d: _squeezed_general_coeffs(p.alpha, p.r, p.phi, d), mean, dim)


def _closed_form_common(a: float, r: float, dim: int):
    if r <= 0:
        raise SingularSqueeze("closed-form squeezed states need r > 0")
    if a < 0:
        raise ParameterError("a must be >= 0")
    sh, ch, th = math.sinh(r), math.cosh(r), math.tanh(r)
    x = a / math.sqrt(2.0 * sh * ch)
    k = np.arange(dim)
    logc = (-0.5 * a * a * (1.0 - th) + 0.5 * k * math.log(th)
            - 0.5 * (k * math.log(2.0) + gammaln(k + 1) + math.log(ch)))
    return sh, ch, th, x, k, logc


def one_photon_squeezed_closed(a: float, r: float, dim: int | None = None) -> FockVector:
    """Closed-form ``|zeta, alpha, 1>`` (``phi = 2 theta``, ``theta = 0``)."""

    def make(d):
        sh, ch, th, x, k, logc = _closed_form_common(a, r, d)
        nxt = np.full(d, -1.0 / math.sqrt(2.0 * sh * ch), dtype=np.complex128)
        this = np.full(d, a * (1.0 / th - 1.0), dtype=np.complex128)
        return hermite_series(logc, nxt, this, x, d - 1)

    _closed_form_common(a, r, 1)
    return _build(make, mean_photon_number(StateParams(alpha_mod=a, r=r, n_extra=1)), dim)


def two_photon_squeezed_closed(a: float, r: float, dim: int | None = None) -> FockVector:
    """Closed-form ``|zeta, alpha, 2>`` (``phi = 2 theta``, ``theta = 0``)."""

    def make(d):
        sh, ch, th, x, k, logc = _closed_form_common(a, r, d)
        logc = logc - 0.5 * math.log(2.0)
        nxt = np.full(d, x * (2.0 - th - 1.0 / th), dtype=np.complex128)
        this = (k * (th - 1.0 / th) + th + a * a * (1.0 / th - 1.0) ** 2).astype(np.complex128)
        return hermite_series(logc, nxt, this, x, d - 1)

    _closed_form_common(a, r, 1)
    return _build(make, mean_photon_number(StateParams(alpha_mod=a, r=r, n_extra=2)), dim)


def n_photon_squeezed_recursive(p: StateParams, dim: int | None = None) -> FockVector:
    """``|zeta, alpha, n>`` by applying ``B^dag / sqrt(m+1)`` to the squeezed
    coherent state ``n_extra`` times; supports general ``theta`` and ``phi``."""

    def make(d):
        work = d + p.n_extra + GUARD
        v = FockVector(_squeezed_general_coeffs(p.alpha, p.r, p.phi, work))
        for m in range(p.n_extra):
            v = apply_Bdag(p, v) / math.sqrt(m + 1)
        return v.coeffs[:d]

    return _build(make, mean_photon_number(p), dim, norm_tol=1e-8)


def build_state(p: StateParams, dim: int | None = None) -> FockVector:
    """Dispatch to the natural constructor for ``p``."""
    if p.r < R_NEGLIGIBLE:
        return n_photon_coherent(p.alpha_mod, p.theta, p.n_extra, dim)
    return n_photon_squeezed_recursive(p, dim)

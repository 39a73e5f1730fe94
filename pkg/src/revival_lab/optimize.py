"""Optimal squeezing for n-photon squeezed coherent states.

At fixed ``|alpha|`` the quotient ``Var(n) / <n>`` of a two-photon state has
an interior minimum in the squeeze magnitude ``r``; the curve of those
minima, written as ``|alpha|^2`` against ``r``, has the closed form evaluated
by :func:`optimal_alpha_sq`. Along a fixed ``r`` the quotient is a ratio of
two affine functions of ``|alpha|^2`` and therefore monotone, so the
numerical check minimizes over ``r`` and inverts, rather than scanning
``|alpha|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from revival_lab.errors import BracketFailure, NegativeRadicand, NoInteriorMinimum, ParameterError
from revival_lab.fock import StateParams
from revival_lab.moments import mean_photon_number, photon_variance, variance_quotient

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
R_SEARCH_MAX = 4.0


@dataclass(frozen=True)
class OptimalPoint:
    r: float
    alpha_sq: float
    mean_n: float
    quotient: float
    n_extra: int = 2

    @property
    def alpha_mod(self) -> float:
        return math.sqrt(self.alpha_sq)

    @property
    def variance(self) -> float:
        return self.quotient * self.mean_n


def _radicand(u: float) -> float:
    # Horner form in u = e^{2r}
    coeffs = (441, 0, -5488, 560, 31502, -13120, 13296, -3440, 1849)
    acc = 0.0
    for c in coeffs:
        acc = acc * u + c
    return acc


def optimal_alpha_sq(r: float) -> float:
    """``|alpha|^2`` on the optimal-squeezing curve of the two-photon state.

    ``(-57 + 21 u^4 - 164 u^2 + 40 u + sqrt(R(u))) / 80`` with ``u = e^{2r}``.
    Near ``r = 0`` the two halves cancel, so when the rational part is
    negative the expression is evaluated in the equivalent form
    ``(R - P^2) / (80 (sqrt(R) - P))`` with ``R - P^2`` factored exactly as
    ``280 (u^2 - 1)(5u^4 - 4u^3 + 30u^2 - 4u + 5)``.
    """
    if not r >= 0:
        raise ParameterError(f"r must be >= 0, got {r}")
    u = math.exp(2 * r)
    R = _radicand(u)
    if R < 0:
        raise NegativeRadicand(f"radicand {R!r} < 0 at r={r}")
    P = math.fsum((-57.0, 21.0 * u ** 4, -164.0 * u ** 2, 40.0 * u))
    root = math.sqrt(R)
    if P >= 0:
        return (P + root) / 80.0
    diff = 280.0 * math.expm1(4 * r) * (5 * u ** 4 - 4 * u ** 3 + 30 * u ** 2 - 4 * u + 5)
    return diff / (80.0 * (root - P))


def optimal_alpha_sq_printed(r: float) -> float:
    """Term-by-term evaluation of the printed formula (compensated sums only)."""
    e = math.exp
    R = math.fsum((441 * e(16 * r), -5488 * e(12 * r), 560 * e(10 * r), 31502 * e(8 * r),
                   -13120 * e(6 * r), 13296 * e(4 * r), -3440 * e(2 * r), 1849.0))
    if R < 0:
        raise NegativeRadicand(f"radicand {R!r} < 0 at r={r}")
    return math.fsum((-57 / 80, 21 / 80 * e(8 * r), -41 / 20 * e(4 * r), 0.5 * e(2 * r),
                      math.sqrt(R) / 80))


def _quotient(n: int, r: float, alpha_mod: float) -> float:
    return variance_quotient(StateParams(alpha_mod=alpha_mod, r=r, n_extra=n))


def golden_section_min(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 500):
    """Golden-section search; returns ``(x_min, f(x_min))``."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * (1.0 + abs(a) + abs(b)) * 0.5:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def best_squeeze(n: int, alpha_mod: float, r_max: float = R_SEARCH_MAX) -> float:
    """``argmin_r Var/<n>`` at fixed ``|alpha|``."""
    if alpha_mod <= 0 and n == 0:
        raise NoInteriorMinimum("vacuum has no squeezing optimum")
    # coarse scan to isolate the basin, then golden section inside it
    grid = np.linspace(0.0, r_max, 41)
    vals = [_quotient(n, r, alpha_mod) if (r > 0 or n > 0 or alpha_mod > 0) else math.inf for r in grid]
    i = int(np.argmin(vals))
    if i == len(grid) - 1:
        raise NoInteriorMinimum(f"quotient still decreasing at r={r_max}")
    lo, hi = grid[max(i - 1, 0)], grid[i + 1]
    r_star, _ = golden_section_min(lambda r: _quotient(n, r, alpha_mod), lo, hi)
    return r_star


def minimize_quotient_numeric(n: int, r: float, alpha_max: float = 200.0, tol: float = 1e-9) -> float:
    """``|alpha|`` whose quotient-minimizing squeeze is exactly ``r``.

    For each trial ``|alpha|`` the quotient is minimized over the squeeze
    magnitude by golden-section search; the trial amplitude is then bisected
    until that minimizer sits at ``r``.
    """
    if not r > 0:
        raise ParameterError("r must be > 0")

    def g(a):
        return best_squeeze(n, a) - r

    lo, hi = 0.0, 1.0
    g_lo = best_squeeze(n, 1e-300) - r if n > 0 else -r
    if g_lo > 0:
        raise NoInteriorMinimum(f"even |alpha| -> 0 prefers squeeze above r={r}")
    while g(hi) < 0:
        lo, hi = hi, 2 * hi
        if hi > alpha_max:
            raise NoInteriorMinimum(f"no |alpha| below {alpha_max} has its optimum at r={r}")
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def optimal_point(r: float, n: int = 2) -> OptimalPoint:
    """Optimal-squeezing point at ``r``; closed form for ``n = 2``, numeric otherwise."""
    alpha_sq = optimal_alpha_sq(r) if n == 2 else (minimize_quotient_numeric(n, r) ** 2 if r > 0 else 0.0)
    p = StateParams(alpha_mod=math.sqrt(alpha_sq), r=r, n_extra=n)
    mean = mean_photon_number(p)
    quotient = photon_variance(p) / mean if mean > 0 else math.nan
    return OptimalPoint(r=r, alpha_sq=alpha_sq, mean_n=mean, quotient=quotient, n_extra=n)


def certify_local_minimum(point: OptimalPoint, rel: float = 1e-3) -> bool:
    """Quotient at the point is no larger than at ``r (1 +/- rel)`` for the same ``|alpha|``."""
    q = _quotient(point.n_extra, point.r, point.alpha_mod)
    return all(q <= _quotient(point.n_extra, point.r * (1 + s * rel), point.alpha_mod) for s in (-1, 1))


def _curve_alpha(n: int, r: float) -> float:
    if r == 0:
        return 0.0
    if n == 2:
        return math.sqrt(optimal_alpha_sq(r))
    return minimize_quotient_numeric(n, r)


def match_integer_mean(n_extra: int, target_mean: float, r_bracket: tuple[float, float] = (0.0, 2.0),
                       tol: float = 1e-10):
    """Find ``(r, |alpha|)`` on the optimal-squeezing curve with mean photon number ``target_mean``.

    Bisection on ``r`` followed by secant polishing. The mean is required to
    be increasing in ``r`` over the bracket; a violation raises
    :class:`BracketFailure`.
    """
    n = int(n_extra)
    if target_mean < n:
        raise ParameterError(f"target mean {target_mean} below the {n} extra photons")
    if target_mean == n:
        return 0.0, 0.0
    lo, hi = map(float, r_bracket)
    if not 0 <= lo < hi:
        raise ParameterError(f"bad bracket {r_bracket}")

    def f(r):
        return mean_photon_number(StateParams(alpha_mod=_curve_alpha(n, r), r=r, n_extra=n)) - target_mean

    f_lo, f_hi = f(lo), f(hi)
    if f_lo * f_hi > 0:
        raise BracketFailure(f"mean - target has the same sign at r={lo} ({f_lo:.4g}) and r={hi} ({f_hi:.4g})")
    probe = [f(r) for r in np.linspace(lo, hi, 9)]
    if np.any(np.diff(probe) <= 0):
        raise BracketFailure("mean photon number is not increasing in r over the bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo < 1e-7:
            break
    a, b, fa, fb = lo, hi, f_lo, f_hi
    for _ in range(50):
        if fb == fa:
            break
        c = b - fb * (b - a) / (fb - fa)
        if not lo <= c <= hi:
            break
        a, fa, b, fb = b, fb, c, f(c)
        if abs(fb) < tol:
            break
    r = b if abs(fb) <= abs(f(0.5 * (lo + hi))) else 0.5 * (lo + hi)
    residual = f(r)
    if abs(residual) >= 1e-6:
        raise BracketFailure(f"residual {residual:.3g} after root polishing")
    return r, _curve_alpha(n, r)

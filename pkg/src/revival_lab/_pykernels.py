"""Pure-Python/NumPy implementations of the numerical kernels.

Used when the compiled extension ``_ckernels`` is unavailable or when the
environment variable ``REVIVAL_LAB_PURE_PYTHON`` is set. Results must agree
with the compiled versions to rounding.
"""
import math

import numpy as np

# rescale threshold for the Hermite recurrence; leaves ~200 decades of headroom
_BIG = 1e100


def hermite_scaled(x, kmax):
    """Physicists' Hermite polynomials H_0..H_kmax at a (complex) point.

    Returns ``(mant, expo)`` with ``H_k(x) = mant[k] * exp(expo[k])``.
    """
    kmax = int(kmax)
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    x = complex(x)
    mant = np.empty(kmax + 1, dtype=np.complex128)
    expo = np.zeros(kmax + 1, dtype=np.float64)
    mant[0] = 1.0
    if kmax == 0:
        return mant, expo
    two_x = 2.0 * x
    h_prev, h = 1.0 + 0j, two_x
    mant[1] = h
    scale = 0.0
    for k in range(1, kmax):
        h_next = two_x * h - 2.0 * k * h_prev
        m = abs(h_next)
        if m > _BIG:
            h_next /= m
            h /= m
            scale += math.log(m)
        mant[k + 1] = h_next
        expo[k + 1] = scale
        h_prev, h = h, h_next
    return mant, expo


def revival_probability(weights, times, lam, delta):
    """Ground-state probability sum over photon-number manifolds.

    ``P(t) = sum_n w_n [1 - (4 lam^2 n / Omega_n^2) sin^2(Omega_n t / 2)]``
    with ``Omega_n = sqrt(delta^2 + 4 lam^2 n)``.
    """
    w = np.ascontiguousarray(weights, dtype=np.float64)
    t = np.ascontiguousarray(times, dtype=np.float64)
    n = np.nonzero(w)[0]
    w = w[n]
    om2 = delta * delta + 4.0 * lam * lam * n
    live = om2 > 0
    const = w[~live].sum()
    n, w, om2 = n[live], w[live], om2[live]
    om = np.sqrt(om2)
    depth = w * (4.0 * lam * lam * n / om2)
    out = np.empty(t.shape, dtype=np.float64)
    # chunk over time to bound the temporary (chunk x n) matrix
    chunk = max(1, 2_000_000 // max(1, n.size))
    total = const + w.sum()
    for start in range(0, t.size, chunk):
        tt = t[start:start + chunk]
        s = np.sin(0.5 * np.multiply.outer(tt, om))
        out[start:start + chunk] = total - (s * s) @ depth
    return out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels (see ``_pykernels`` for the reference versions)."""
import numpy as np

from cython.parallel cimport prange
from libc.math cimport sin, cos, sqrt, log, hypot, fabs

cdef double _BIG = 1e100
# rotation steps between exact sin/cos re-anchors on uniform grids
cdef Py_ssize_t _ANCHOR = 64


def hermite_scaled(x, Py_ssize_t kmax):
    """Physicists' Hermite polynomials H_0..H_kmax at a (complex) point.

    Returns ``(mant, expo)`` with ``H_k(x) = mant[k] * exp(expo[k])``.
    """
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    cdef double complex cx = complex(x)
    mant_arr = np.empty(kmax + 1, dtype=np.complex128)
    expo_arr = np.zeros(kmax + 1, dtype=np.float64)
    cdef double complex[::1] mant = mant_arr
    cdef double[::1] expo = expo_arr
    mant[0] = 1.0
    if kmax == 0:
        return mant_arr, expo_arr
    cdef double complex two_x = 2.0 * cx
    cdef double complex h_prev = 1.0, h = two_x, h_next
    cdef double scale = 0.0, m
    cdef Py_ssize_t k
    mant[1] = h
    for k in range(1, kmax):
        h_next = two_x * h - (2.0 * k) * h_prev
        m = hypot(h_next.real, h_next.imag)
        if m > _BIG:
            h_next = h_next / m
            h = h / m
            scale += log(m)
        mant[k + 1] = h_next
        expo[k + 1] = scale
        h_prev = h
        h = h_next
    return mant_arr, expo_arr


def revival_probability(weights, times, double lam, double delta):
    """Ground-state probability sum over photon-number manifolds.

    ``P(t) = sum_n w_n [1 - (4 lam^2 n / Omega_n^2) sin^2(Omega_n t / 2)]``
    with ``Omega_n = sqrt(delta^2 + 4 lam^2 n)``.
    """
    w_all = np.ascontiguousarray(weights, dtype=np.float64)
    t_arr = np.ascontiguousarray(times, dtype=np.float64)
    idx = np.nonzero(w_all)[0]
    cdef double[::1] w = w_all[idx]
    cdef Py_ssize_t nlive = idx.shape[0]
    half_om_arr = np.empty(nlive, dtype=np.float64)
    depth_arr = np.empty(nlive, dtype=np.float64)
    cdef double[::1] half_om = half_om_arr
    cdef double[::1] depth = depth_arr
    cdef const double[::1] t = t_arr
    cdef double total = 0.0, om2
    cdef Py_ssize_t j, i, n
    for j in range(nlive):
        n = idx[j]
        total += w[j]
        om2 = delta * delta + 4.0 * lam * lam * n
        if om2 > 0.0:
            half_om[j] = 0.5 * sqrt(om2)
            depth[j] = w[j] * (4.0 * lam * lam * n / om2)
        else:
            half_om[j] = 0.0
            depth[j] = 0.0
    out_arr = np.empty(t.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    if _is_uniform(t):
        _rotating_sum(half_om, depth, t, nlive, out)
        for i in range(t.shape[0]):
            out[i] = total - out[i]
        return out_arr
    # each time point is an independent, fixed-order sum: deterministic under any schedule
    for i in prange(t.shape[0], nogil=True, schedule="static"):
        out[i] = total - _depth_sum(half_om, depth, t[i], nlive)
    return out_arr


cdef inline double _depth_sum(double[::1] half_om, double[::1] depth, double ti,
                              Py_ssize_t nlive) noexcept nogil:
    cdef double acc = 0.0, s
    cdef Py_ssize_t j
    for j in range(nlive):
        s = sin(half_om[j] * ti)
        acc = acc + depth[j] * s * s
    return acc


cdef bint _is_uniform(const double[::1] t):
    cdef Py_ssize_t n = t.shape[0], i
    if n < 3:
        return False
    cdef double dt = (t[n - 1] - t[0]) / (n - 1)
    if dt <= 0:
        return False
    for i in range(1, n):
        if fabs((t[i] - t[i - 1]) - dt) > 1e-9 * dt:
            return False
    return True


cdef void _rotating_sum(double[::1] half_om, double[::1] depth, const double[::1] t,
                        Py_ssize_t nlive, double[::1] out) noexcept nogil:
    # out[i] = sum_j depth[j] sin^2(half_om[j] t[i]); the phase is advanced by a
    # fixed rotation and re-anchored with exact sin/cos every _ANCHOR samples.
    # Summation order over j matches the direct kernel.
    cdef Py_ssize_t nt = t.shape[0], i, m, m_end, j
    cdef double s, c, s_new, cs, sn, step, d
    for i in range(nt):
        out[i] = 0.0
    for j in range(nlive):
        d = depth[j]
        i = 0
        while i < nt:
            m_end = i + _ANCHOR
            if m_end > nt:
                m_end = nt
            s = sin(half_om[j] * t[i])
            c = cos(half_om[j] * t[i])
            if m_end - 1 > i:
                step = half_om[j] * (t[m_end - 1] - t[i]) / (m_end - 1 - i)
            else:
                step = 0.0
            cs = cos(step)
            sn = sin(step)
            for m in range(i, m_end):
                out[m] = out[m] + d * s * s
                s_new = s * cs + c * sn
                c = c * cs - s * sn
                s = s_new
            i = m_end

"""Jaynes-Cummings dynamics for an atom starting in its ground state.

Each photon-number component ``|1, n>`` only mixes with ``|2, n-1>``, so the
evolution is a closed-form Rabi rotation per manifold. Times are in units of
``1/lambda`` when ``lambda_coupling = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.ndimage import maximum_filter1d

from revival_lab.errors import NoRevivalInWindow, ParameterError
from revival_lab.fock import FockVector, StateParams
from revival_lab.kernels import revival_probability


@dataclass(frozen=True, eq=False)
class JcmParams:
    lambda_coupling: float = 1.0
    detuning: float = 0.0
    t_grid: np.ndarray = field(default_factory=lambda: np.zeros(1))

    def __post_init__(self):
        if not self.lambda_coupling > 0:
            raise ParameterError(f"lambda_coupling must be > 0, got {self.lambda_coupling}")
        if not np.isfinite(self.detuning):
            raise ParameterError("detuning must be finite")
        t = np.array(self.t_grid, dtype=np.float64, copy=True).reshape(-1)
        if t.size == 0:
            raise ParameterError("t_grid must be non-empty")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ParameterError("t_grid must be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "t_grid", t)

    @classmethod
    def uniform(cls, t_max: float, points: int, lambda_coupling: float = 1.0,
                detuning: float = 0.0) -> JcmParams:
        if points < 2 or t_max <= 0:
            raise ParameterError("need points >= 2 and t_max > 0")
        return cls(lambda_coupling, detuning, np.linspace(0.0, t_max, points))


def rabi_frequency(n, jcm: JcmParams):
    """``sqrt(detuning^2 + 4 lambda^2 n)``; vectorised over ``n``."""
    n = np.asarray(n, dtype=np.float64)
    if np.any(n < 0):
        raise ParameterError("photon number must be >= 0")
    out = np.sqrt(jcm.detuning ** 2 + 4.0 * jcm.lambda_coupling ** 2 * n)
    return float(out) if out.ndim == 0 else out


def _coeff_array(a) -> np.ndarray:
    if isinstance(a, FockVector):
        return np.asarray(a.coeffs)
    return np.asarray(a, dtype=np.complex128)


def amplitudes(a, t: float, jcm: JcmParams):
    """Ground/excited amplitudes after time ``t``.

    ``c1[n]`` multiplies ``|1>|n>``; ``c2[n]`` is the excited-state amplitude
    reached from it, which carries ``n - 1`` photons.
    """
    a = _coeff_array(a)
    n = np.arange(a.size)
    lam, delta = jcm.lambda_coupling, jcm.detuning
    om = rabi_frequency(n, jcm)
    c, s = np.cos(om * t / 2), np.sin(om * t / 2)
    safe = np.where(om > 0, om, 1.0)
    # om = 0 only for n = 0 at resonance: c1 = a_0, c2 = 0
    det_ratio = np.where(om > 0, delta / safe, 0.0)
    cpl_ratio = np.where(om > 0, 2 * lam * np.sqrt(n) / safe, 0.0)
    c1 = a * (c + 1j * det_ratio * s)
    c2 = -a * cpl_ratio * s
    return c1, c2


def ground_state_probability(a, t, jcm: JcmParams):
    """``sum_n |c_{1,n}(t)|^2`` for scalar or array ``t``."""
    w = np.abs(_coeff_array(a)) ** 2
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = revival_probability(w, t_arr, jcm.lambda_coupling, jcm.detuning)
    return float(out[0]) if np.ndim(t) == 0 else out


def ground_state_probability_resonant(a, t, lambda_coupling: float = 1.0):
    """Resonant form ``(1/2) sum_n |a_n|^2 [1 + cos(2 lambda sqrt(n) t)]``."""
    w = np.abs(_coeff_array(a)) ** 2
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    freq = 2 * lambda_coupling * np.sqrt(np.arange(w.size))
    out = 0.5 * (w.sum() + np.cos(np.multiply.outer(t_arr, freq)) @ w)
    return float(out[0]) if np.ndim(t) == 0 else out


@dataclass(frozen=True, eq=False)
class RevivalTrace:
    times: np.ndarray
    p_ground: np.ndarray
    source_params: StateParams | None
    jcm: JcmParams
    weights: np.ndarray

    @property
    def mean_photons(self) -> float:
        return float(np.arange(self.weights.size) @ self.weights)

    @property
    def plateau(self) -> float:
        """Time average of P: ``sum_n w_n (1 - 2 lambda^2 n / Omega_n^2)``."""
        n = np.arange(self.weights.size)
        om2 = self.jcm.detuning ** 2 + 4 * self.jcm.lambda_coupling ** 2 * n
        frac = np.where(om2 > 0, 2 * self.jcm.lambda_coupling ** 2 * n / np.where(om2 > 0, om2, 1), 0.0)
        return float(self.weights @ (1 - frac))


def revival_trace(p: StateParams | FockVector, jcm: JcmParams, dim: int | None = None) -> RevivalTrace:
    """Sample P(t) over ``jcm.t_grid`` for the state described by ``p``."""
    if isinstance(p, FockVector):
        state, params = p, None
    else:
        from revival_lab.states import build_state

        state, params = build_state(p, dim), p
    w = state.probabilities
    w = w / w.sum()
    probs = revival_probability(w, jcm.t_grid, jcm.lambda_coupling, jcm.detuning)
    probs = np.clip(probs, 0.0, 1.0)
    w.setflags(write=False)
    probs.setflags(write=False)
    return RevivalTrace(jcm.t_grid, probs, params, jcm, w)


class EnvelopeMetrics(NamedTuple):
    collapse_time: float
    first_revival_time: float
    revival_peak: float


def envelope_amplitude(trace: RevivalTrace) -> np.ndarray:
    """Running max of ``|P - plateau|`` over one local Rabi period."""
    nbar = trace.mean_photons
    t = trace.times
    if nbar <= 0 or t.size < 2:
        return np.abs(trace.p_ground - trace.plateau)
    width = 2 * math.pi / (2 * trace.jcm.lambda_coupling * math.sqrt(nbar))
    dt = float(np.median(np.diff(t)))
    size = max(1, int(round(width / dt)) | 1)
    return maximum_filter1d(np.abs(trace.p_ground - trace.plateau), size=size, mode="nearest")


def envelope_metrics(trace: RevivalTrace, threshold: float = 0.05) -> EnvelopeMetrics:
    """Collapse time, first revival time and first revival peak of a trace.

    The collapse time is the first time the envelope (see
    :func:`envelope_amplitude`) drops below ``threshold``. The first revival
    is the maximum of P inside ``[max(2 t_c, t_R/2), 3 t_R/2]``, where
    ``t_R = 2 pi sqrt(nbar) / lambda`` is the resonant revival-time estimate.
    """
    nbar = trace.mean_photons
    if nbar <= 0:
        raise NoRevivalInWindow("vacuum trace has no dynamics")
    t, p = trace.times, trace.p_ground
    amp = envelope_amplitude(trace)
    below = np.nonzero(amp < threshold)[0]
    if below.size == 0:
        raise NoRevivalInWindow(f"envelope never falls below {threshold}")
    t_c = float(t[below[0]])
    t_rev = 2 * math.pi * math.sqrt(nbar) / trace.jcm.lambda_coupling
    lo, hi = max(2 * t_c, 0.5 * t_rev), 1.5 * t_rev
    if t[-1] < hi:
        raise NoRevivalInWindow(f"trace ends at {t[-1]:.4g}, before the revival window closes at {hi:.4g}")
    if lo >= hi:
        raise NoRevivalInWindow("collapse is too slow to separate from the first revival")
    sel = np.nonzero((t >= lo) & (t <= hi))[0]
    i = sel[np.argmax(p[sel])]
    return EnvelopeMetrics(t_c, float(t[i]), float(p[i]))

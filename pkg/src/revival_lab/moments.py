"""Closed-form photon statistics of n-photon squeezed coherent states.

The number operator has only five non-zero matrix elements in the
``|zeta, alpha, n>`` basis (offsets 0, +1, -1, +2, -2), so the second moment
is a sum of five squared magnitudes and the variance drops the diagonal one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from revival_lab.errors import DegenerateState
from revival_lab.fock import StateParams


@dataclass(frozen=True)
class MomentElements:
    """``<n'|a^dag a|n>`` in the squeezed-coherent basis, keyed by ``n' - n``.

    ``A`` is the diagonal (offset 0), ``B`` offset +1, ``C`` offset -1,
    ``D`` offset +2, ``E`` offset -2.
    """

    A: float
    B: complex
    C: complex
    D: complex
    E: complex
    w: complex

    @property
    def second_moment(self) -> float:
        return self.A ** 2 + abs(self.B) ** 2 + abs(self.C) ** 2 + abs(self.D) ** 2 + abs(self.E) ** 2

    @property
    def variance(self) -> float:
        return abs(self.B) ** 2 + abs(self.C) ** 2 + abs(self.D) ** 2 + abs(self.E) ** 2

    def by_offset(self) -> dict[int, complex]:
        return {0: self.A, 1: self.B, -1: self.C, 2: self.D, -2: self.E}


def _w(p: StateParams) -> complex:
    a = p.alpha
    return a.conjugate() * math.cosh(p.r) - a * _phase(-p.phi) * math.sinh(p.r)


def _phase(angle: float) -> complex:
    return complex(math.cos(angle), math.sin(angle))


def mean_photon_number(p: StateParams) -> float:
    n, r = p.n_extra, p.r
    sh, ch = math.sinh(r), math.cosh(r)
    a = p.alpha
    disp = a * _phase(-p.phi / 2) * ch - a.conjugate() * _phase(p.phi / 2) * sh
    return (n + 1) * sh * sh + n * ch * ch + abs(disp) ** 2


def matrix_elements(p: StateParams) -> MomentElements:
    n, r = p.n_extra, p.r
    sh, ch = math.sinh(r), math.cosh(r)
    w = _w(p)
    wc = w.conjugate()
    A = (n + 1) * sh * sh + n * ch * ch + abs(w) ** 2
    B = math.sqrt(n + 1) * (wc * ch - w * _phase(p.phi) * sh)
    C = math.sqrt(n) * (w * ch - wc * _phase(-p.phi) * sh)
    # +2 element carries e^{+i phi}: it is the conjugate of the -2 element of n+2
    D = -_phase(p.phi) * math.sqrt((n + 1) * (n + 2)) * sh * ch
    E = -_phase(-p.phi) * math.sqrt(n * (n - 1)) * sh * ch if n >= 2 else 0j
    return MomentElements(A=A, B=B, C=C, D=D, E=E, w=w)


def second_moment(p: StateParams) -> float:
    return matrix_elements(p).second_moment


def photon_variance(p: StateParams) -> float:
    return matrix_elements(p).variance


def variance_quotient(p: StateParams) -> float:
    mean = mean_photon_number(p)
    if mean <= 0:
        raise DegenerateState("variance quotient undefined for the vacuum (mean photon number 0)")
    return photon_variance(p) / mean

"""Truncated single-mode Fock space.

A :class:`FockVector` holds the coefficients of ``|0>, ..., |N-1>``. The top
``GUARD`` indices form a guard band: amplitude found there means the
truncation is too tight for whatever operation produced the vector.

Ladder actions here never renormalize; only state constructors do.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from revival_lab.errors import ParameterError, UnderTruncated

GUARD = 5
EPS_NORM = 1e-10
EPS_TAIL = 1e-12
OPERATOR_TOL = 1e-8

DIM_OVERRIDE_ENV = "REVIVAL_LAB_DIM_OVERRIDE"


@dataclass(frozen=True, eq=False)
class FockVector:
    """Immutable complex coefficient vector over number states."""

    coeffs: np.ndarray
    tail_mass: float = field(init=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128, copy=True)
        if c.ndim != 1 or c.size < 1:
            raise ParameterError("FockVector needs a 1-d coefficient array with dim >= 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "tail_mass", float(np.sum(np.abs(c[-GUARD:]) ** 2)))

    @classmethod
    def basis(cls, n: int, dim: int) -> FockVector:
        if not 0 <= n < dim:
            raise ParameterError(f"basis index {n} outside dim {dim}")
        c = np.zeros(dim, dtype=np.complex128)
        c[n] = 1.0
        return cls(c)

    @classmethod
    def zeros(cls, dim: int) -> FockVector:
        return cls(np.zeros(dim, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    @property
    def under_truncated(self) -> bool:
        """Guard-band mass exceeds ``EPS_TAIL`` (relative to the total once that exceeds 1)."""
        return self.tail_mass > EPS_TAIL * max(self.norm_sq, 1.0)

    def is_normalized(self, tol: float = EPS_NORM) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def normalized(self) -> FockVector:
        nrm = self.norm
        if nrm == 0:
            return self
        return FockVector(self.coeffs / nrm)

    def resized(self, dim: int) -> FockVector:
        """Zero-pad or cut to ``dim`` (cutting silently drops amplitude)."""
        c = np.zeros(dim, dtype=np.complex128)
        m = min(dim, self.dim)
        c[:m] = self.coeffs[:m]
        return FockVector(c)

    def with_canonical_phase(self) -> FockVector:
        """Rotate so the largest-magnitude coefficient is real and positive."""
        k = int(np.argmax(np.abs(self.coeffs)))
        ck = self.coeffs[k]
        if ck == 0:
            return self
        return FockVector(self.coeffs * (abs(ck) / ck))

    def _binary(self, other, op):
        if isinstance(other, FockVector):
            dim = max(self.dim, other.dim)
            return FockVector(op(self.resized(dim).coeffs, other.resized(dim).coeffs))
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, complex, np.number)):
            return FockVector(self.coeffs * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, (int, float, complex, np.number)):
            return FockVector(self.coeffs / scalar)
        return NotImplemented

    def __neg__(self):
        return FockVector(-self.coeffs)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"FockVector(dim={self.dim}, norm={self.norm:.12g}, tail_mass={self.tail_mass:.3g})"


@dataclass(frozen=True)
class StateParams:
    """Parameters of the n-photon squeezed coherent state ``|zeta, alpha, n>``.

    ``alpha = alpha_mod * exp(i theta)`` and ``zeta = r * exp(i phi)``. With
    ``lock_phi_to_2theta`` (the default) ``phi`` is derived as ``2 theta``;
    passing an inconsistent ``phi`` is an error.
    """

    alpha_mod: float = 0.0
    theta: float = 0.0
    r: float = 0.0
    phi: float | None = None
    n_extra: int = 0
    lock_phi_to_2theta: bool = True

    def __post_init__(self):
        for name in ("alpha_mod", "theta", "r"):
            val = getattr(self, name)
            if not np.isfinite(val):
                raise ParameterError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, float(val))
        if self.alpha_mod < 0:
            raise ParameterError(f"alpha_mod must be >= 0, got {self.alpha_mod}")
        if self.r < 0:
            raise ParameterError(f"r must be >= 0, got {self.r}")
        if int(self.n_extra) != self.n_extra or self.n_extra < 0:
            raise ParameterError(f"n_extra must be a non-negative integer, got {self.n_extra!r}")
        object.__setattr__(self, "n_extra", int(self.n_extra))
        if self.lock_phi_to_2theta:
            if self.phi is not None and self.phi != 2 * self.theta:
                raise ParameterError("phi must equal 2*theta when lock_phi_to_2theta is set")
            object.__setattr__(self, "phi", 2.0 * self.theta)
        else:
            phi = 0.0 if self.phi is None else self.phi
            if not np.isfinite(phi):
                raise ParameterError(f"phi must be finite, got {phi!r}")
            object.__setattr__(self, "phi", float(phi))

    @property
    def alpha(self) -> complex:
        return self.alpha_mod * complex(math.cos(self.theta), math.sin(self.theta))

    @property
    def zeta(self) -> complex:
        return self.r * complex(math.cos(self.phi), math.sin(self.phi))

    def replace(self, **changes) -> StateParams:
        fields = dict(alpha_mod=self.alpha_mod, theta=self.theta, r=self.r,
                      phi=None if self.lock_phi_to_2theta else self.phi,
                      n_extra=self.n_extra, lock_phi_to_2theta=self.lock_phi_to_2theta)
        fields.update(changes)
        return StateParams(**fields)


def default_dim(mean_photons: float, extra: int = 0) -> int:
    """Starting truncation for a state with the given mean photon number."""
    nbar = max(0.0, float(mean_photons))
    return math.ceil(nbar + 10.0 * math.sqrt(nbar + 1.0)) + 20 + extra


def dim_override() -> int | None:
    raw = os.environ.get(DIM_OVERRIDE_ENV)
    if raw is None or not raw.strip():
        return None
    try:
        dim = int(raw)
    except ValueError:
        raise ParameterError(f"{DIM_OVERRIDE_ENV} must be an integer, got {raw!r}") from None
    if dim < 1:
        raise ParameterError(f"{DIM_OVERRIDE_ENV} must be >= 1, got {dim}")
    return dim


def apply_annihilation(v: FockVector) -> FockVector:
    c = v.coeffs
    out = np.zeros_like(c)
    out[:-1] = np.sqrt(np.arange(1, v.dim)) * c[1:]
    return FockVector(out)


def apply_creation(v: FockVector) -> FockVector:
    """``a^dagger v``; raises if the guard band carries significant amplitude."""
    if v.under_truncated:
        raise UnderTruncated(
            f"guard-band mass {v.tail_mass:.3g} of dim-{v.dim} vector would be pushed past the truncation")
    c = v.coeffs
    out = np.zeros_like(c)
    out[1:] = np.sqrt(np.arange(1, v.dim)) * c[:-1]
    return FockVector(out)


def apply_B(p: StateParams, v: FockVector) -> FockVector:
    """Squeezed-coherent lowering operator ``cosh r a + e^{i phi} sinh r a^dag - alpha``."""
    ch, sh = math.cosh(p.r), math.sinh(p.r)
    rot = complex(math.cos(p.phi), math.sin(p.phi))
    out = ch * apply_annihilation(v).coeffs - p.alpha * v.coeffs
    if sh != 0:
        out = out + rot * sh * apply_creation(v).coeffs
    return FockVector(out)


def apply_Bdag(p: StateParams, v: FockVector) -> FockVector:
    """Squeezed-coherent raising operator ``e^{-i phi} sinh r a + cosh r a^dag - alpha*``."""
    ch, sh = math.cosh(p.r), math.sinh(p.r)
    rot = complex(math.cos(p.phi), -math.sin(p.phi))
    out = ch * apply_creation(v).coeffs - p.alpha.conjugate() * v.coeffs
    if sh != 0:
        out = out + rot * sh * apply_annihilation(v).coeffs
    return FockVector(out)


def inner_product(u: FockVector, v: FockVector) -> complex:
    """``<u|v>``, zero-padding the shorter vector."""
    m = min(u.dim, v.dim)
    return complex(np.vdot(u.coeffs[:m], v.coeffs[:m]))


def overlap_deficit(u: FockVector, v: FockVector) -> float:
    """``1 - |<u|v>|`` for normalized vectors; insensitive to global phase."""
    return 1.0 - abs(inner_product(u, v))


class NumberMoments(NamedTuple):
    mean: float
    second: float

    @property
    def variance(self) -> float:
        return self.second - self.mean ** 2


def number_expectation_numeric(v: FockVector) -> NumberMoments:
    """``sum k |c_k|^2`` and ``sum k^2 |c_k|^2`` of a normalized vector."""
    if v.under_truncated:
        raise UnderTruncated(f"tail mass {v.tail_mass:.3g} exceeds {EPS_TAIL:g}")
    p = v.probabilities
    k = np.arange(v.dim, dtype=np.float64)
    return NumberMoments(float(math.fsum(k * p)), float(math.fsum(k * k * p)))

"""Brute-force reference constructions used to cross-check the closed forms.

Nothing here is fast. States are built as dense matrix-vector products with
truncated matrix exponentials of the displacement and squeeze generators, and
the Jaynes-Cummings dynamics is integrated with fixed-step RK4 in each
two-level excitation manifold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from revival_lab.errors import ParameterError, UnderTruncated
from revival_lab.fock import EPS_TAIL, GUARD, OPERATOR_TOL, FockVector, StateParams
from revival_lab.jcm import JcmParams

SQUEEZE_GUARD = 15


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense truncated operator.

    ``inner_dim`` counts the leading columns whose leakage into the bottom
    guard rows stays below ``OPERATOR_TOL``; on those columns the truncated
    operator agrees with the untruncated one.
    """

    entries: np.ndarray
    op_kind: str
    inner_dim: int

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self.entries @ other.entries
        if isinstance(other, FockVector):
            return FockVector(self.entries @ other.resized(self.dim).coeffs)
        return self.entries @ other


def annihilation_matrix(N: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, N, dtype=np.float64)), k=1).astype(np.complex128)


def number_matrix(N: int) -> np.ndarray:
    return np.diag(np.arange(N, dtype=np.float64)).astype(np.complex128)


def expm_taylor(X: np.ndarray, tol: float = 1e-18, max_terms: int = 60) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a truncated Taylor series."""
    X = np.asarray(X, dtype=np.complex128)
    norm = np.linalg.norm(X, 1)
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    Y = X / 2.0 ** s
    out = np.eye(X.shape[0], dtype=np.complex128)
    term = np.eye(X.shape[0], dtype=np.complex128)
    for j in range(1, max_terms + 1):
        term = term @ Y / j
        out = out + term
        if np.linalg.norm(term, 1) < tol:
            break
    for _ in range(s):
        out = out @ out
    return out


def trusted_inner_dim(U: np.ndarray, guard: int, tol: float = OPERATOR_TOL) -> int:
    """Number of leading columns that leak less than ``tol`` into the last ``guard`` rows.

    The exponential of a truncated anti-Hermitian generator is exactly
    unitary at any size, so unitarity says nothing about truncation error;
    leakage into the bottom rows does.
    """
    leak = np.sum(np.abs(U[-guard:, :]) ** 2, axis=0)
    bad = np.nonzero(np.maximum.accumulate(leak) >= tol)[0]
    return int(bad[0]) if bad.size else U.shape[1]


def _unitary(X: np.ndarray, kind: str, need: int, guard: int) -> OperatorMatrix:
    U = expm_taylor(X)
    inner = trusted_inner_dim(U, guard)
    if inner < need:
        raise UnderTruncated(f"{kind} matrix trustworthy only on the leading {inner} states, need {need}")
    return OperatorMatrix(U, kind, inner)


def displacement_matrix(alpha: complex, N: int, need: int = 1) -> OperatorMatrix:
    """``exp(alpha a^dag - alpha* a)`` truncated to N states."""
    a = annihilation_matrix(N)
    X = alpha * a.conj().T - np.conj(alpha) * a
    return _unitary(X, "displacement", need, GUARD)


def squeeze_matrix(zeta: complex, N: int, need: int = 1) -> OperatorMatrix:
    """``exp(-(zeta/2) a^dag^2 + (zeta*/2) a^2)`` truncated to N states."""
    a = annihilation_matrix(N)
    a2 = a @ a
    X = -0.5 * zeta * a2.conj().T + 0.5 * np.conj(zeta) * a2
    return _unitary(X, "squeeze", need, SQUEEZE_GUARD)


def _work_dim(p: StateParams, N: int) -> int:
    # N already holds the squeezed result; the displaced intermediate D(alpha)|n>
    # sits near |alpha|^2 + n. Half of N again keeps the truncated generators
    # accurate on the occupied block; the guard loop below grows M if not.
    mid = p.alpha_mod ** 2 + p.n_extra
    spread = (p.alpha_mod + 1.0) * math.sqrt(2 * p.n_extra + 1)
    return max(N + N // 2, math.ceil(mid + 12 * spread)) + SQUEEZE_GUARD


def _oracle_vector(p: StateParams, M: int) -> np.ndarray:
    v = np.zeros(M, dtype=np.complex128)
    v[0] = 1.0
    adag = annihilation_matrix(M).conj().T
    for _ in range(p.n_extra):
        v = adag @ v
    v = v / math.sqrt(math.factorial(p.n_extra))
    v = displacement_matrix(p.alpha, M, need=p.n_extra + 1).entries @ v
    if p.r > 0:
        # squeezing stretches column j over ~j e^{2r} rows, so few columns are
        # individually leak-free; the caller certifies the weighted result by
        # its guard-band mass instead
        v = squeeze_matrix(p.zeta, M).entries @ v
    return v


def build_state_oracle(p: StateParams, N: int) -> FockVector:
    """``S(zeta) D(alpha) (a^dag)^n / sqrt(n!) |0>`` by dense products, cut to N."""
    if N < p.n_extra + 1:
        raise ParameterError(f"N={N} cannot hold |{p.n_extra}>")
    M = _work_dim(p, N)
    for _ in range(6):
        try:
            v = _oracle_vector(p, M)
        except UnderTruncated:
            v = None
        if v is not None:
            guard = np.sum(np.abs(v[-SQUEEZE_GUARD:]) ** 2)
            if guard < 1e-20 and abs(np.vdot(v, v).real - 1.0) < 1e-10:
                break
        M = math.ceil(M * 1.5)
    else:
        raise UnderTruncated(f"oracle workspace did not converge (last M={M})")
    lost = np.sum(np.abs(v[N:]) ** 2)
    if lost > EPS_TAIL:
        raise UnderTruncated(f"state carries mass {lost:.3g} beyond N={N}")
    return FockVector(v[:N]).normalized()


def integrate_jcm(a, jcm: JcmParams, t_end: float, max_phase_step: float = 0.002):
    """RK4 integration of the per-manifold JCM equations.

    Returns ``(c1, c2)``: ``c1[n]`` is the amplitude of (ground atom, n photons)
    and ``c2[n]`` that of (excited atom, n - 1 photons), the partner state in
    the same excitation manifold.
    """
    a = np.asarray(a, dtype=np.complex128)
    if t_end < 0:
        raise ParameterError("t_end must be >= 0")
    n = np.arange(a.size)
    lam, delta = jcm.lambda_coupling, jcm.detuning
    g = lam * np.sqrt(n)
    # H in basis {|1,n>, |2,n-1>}: [[-delta/2, i g], [-i g, delta/2]]
    H = np.zeros((a.size, 2, 2), dtype=np.complex128)
    H[:, 0, 0] = -delta / 2
    H[:, 1, 1] = delta / 2
    H[:, 0, 1] = 1j * g
    H[:, 1, 0] = -1j * g
    H[0, 1, :] = 0
    H[0, :, 1] = 0
    omega_max = math.sqrt(delta ** 2 + 4 * lam ** 2 * max(0, a.size - 1))
    steps = max(1, math.ceil(t_end * max(omega_max, 1.0) / max_phase_step)) if t_end > 0 else 0
    y = np.zeros((a.size, 2), dtype=np.complex128)
    y[:, 0] = a
    if steps == 0:
        return y[:, 0].copy(), y[:, 1].copy()
    h = t_end / steps
    # one RK4 step of y' = -i H y is multiplication by the degree-4 Taylor polynomial of -i H h
    K = -1j * h * H
    eye = np.broadcast_to(np.eye(2, dtype=np.complex128), K.shape)
    K2 = K @ K
    K3 = K2 @ K
    K4 = K3 @ K
    step = eye + K + K2 / 2 + K3 / 6 + K4 / 24
    prop = np.linalg.matrix_power(step, steps)
    y = np.einsum("nij,nj->ni", prop, y)
    return y[:, 0], y[:, 1]

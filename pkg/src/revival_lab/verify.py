"""Cross-check suites behind ``revival-lab verify``.

Each check compares a fast path against an independent construction and
reports the measured defect next to its tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from revival_lab import jcm as jcm_mod
from revival_lab import moments, oracle, states
from revival_lab.fock import (
    FockVector,
    StateParams,
    apply_B,
    apply_Bdag,
    inner_product,
    number_expectation_numeric,
    overlap_deficit,
)

OP_TOL = 1e-8
MOMENT_RTOL = 1e-6

# (|alpha|, r) pairs with phi = 2 theta = 0, plus one general-phase case
GRID = [(a, r) for r in (0.2, 0.424875, 0.8992) for a in (1.0, 2.18536, 5.0)]
# preset parameter pairs, reaching the large-amplitude end of the test range
PRESET_POINTS = [(2.56230, 0.424875), (24.4485, 0.8992), (23.92344, 0.8992)]
GENERAL = StateParams(alpha_mod=1.3, theta=0.7, r=0.5, phi=2.1, lock_phi_to_2theta=False)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.defect) and self.defect < self.tol)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}\t{self.suite}\t{self.name}\tdefect={self.defect:.3e}\ttol={self.tol:.1e}"


def _common_dim(p: StateParams, n_max: int) -> int:
    return states.build_state(p.replace(n_extra=n_max)).dim + 10


def _oracle_family(p: StateParams, n_max: int) -> list[FockVector]:
    N = _common_dim(p, n_max + 1)
    return [oracle.build_state_oracle(p.replace(n_extra=n), N) for n in range(n_max + 2)]


def _label(p: StateParams) -> str:
    s = f"a={p.alpha_mod:g},r={p.r:g}"
    if p.theta or p.phi:
        s += f",theta={p.theta:g},phi={p.phi:g}"
    return s


def ladder_suite(params=None, n_max: int = 5) -> list[CheckResult]:
    out = []
    params = params or [StateParams(alpha_mod=2.18536, r=0.424875), StateParams(alpha_mod=1.0, r=0.2), GENERAL]
    rng = np.random.default_rng(7)
    for p in params:
        fam = _oracle_family(p, n_max)
        lab = _label(p)
        out.append(CheckResult("ladder", f"B|0>=0 [{lab}]", apply_B(p, fam[0]).norm, OP_TOL))
        for n in range(n_max + 1):
            v = fam[n]
            if n > 0:
                d = (apply_B(p, v) - math.sqrt(n) * fam[n - 1]).norm
                out.append(CheckResult("ladder", f"B|{n}>=sqrt(n)|{n-1}> [{lab}]", d, OP_TOL))
            d = (apply_Bdag(p, v) - math.sqrt(n + 1) * fam[n + 1]).norm
            out.append(CheckResult("ladder", f"Bdag|{n}>=sqrt(n+1)|{n+1}> [{lab}]", d, OP_TOL))
            d = (apply_Bdag(p, apply_B(p, v)) - n * v).norm
            out.append(CheckResult("ladder", f"BdagB|{n}>=n|{n}> [{lab}]", d, OP_TOL))
        dim = fam[0].dim
        c = np.zeros(dim, dtype=complex)
        m = dim // 3
        c[:m] = rng.normal(size=m) + 1j * rng.normal(size=m)
        v = FockVector(c).normalized()
        comm = apply_B(p, apply_Bdag(p, v)) - apply_Bdag(p, apply_B(p, v))
        out.append(CheckResult("ladder", f"[B,Bdag]=1 [{lab}]", (comm - v).norm, OP_TOL))
    return out


def basis_suite(params=None, n_max: int = 5) -> list[CheckResult]:
    out = []
    params = params or [StateParams(alpha_mod=a, r=r) for a, r in GRID[::4]] + [GENERAL]
    for p in params:
        dim = _common_dim(p, n_max)
        fam = [states.n_photon_squeezed_recursive(p.replace(n_extra=n), dim) for n in range(n_max + 1)]
        gram = np.array([[inner_product(u, v) for v in fam] for u in fam])
        d = float(np.abs(gram - np.eye(n_max + 1)).max())
        out.append(CheckResult("basis", f"orthonormality n,n'<={n_max} [{_label(p)}]", d, OP_TOL))
    return out


def moments_suite(params=None, n_max: int = 3) -> list[CheckResult]:
    out = []
    params = params or ([StateParams(alpha_mod=a, r=r) for a, r in GRID]
                        + [StateParams(alpha_mod=a, r=r) for a, r in PRESET_POINTS]
                        + [StateParams(alpha_mod=a) for a in (0.5, 2.0, 10.0)] + [GENERAL])
    for base in params:
        for n in range(n_max + 1):
            p = base.replace(n_extra=n)
            num = number_expectation_numeric(states.build_state(p))
            lab = f"n={n} {_label(p)}"
            mean = moments.mean_photon_number(p)
            me = moments.matrix_elements(p)
            for what, closed, numeric in (("mean", mean, num.mean),
                                          ("second", me.second_moment, num.second),
                                          ("variance", me.variance, num.variance)):
                rel = abs(closed - numeric) / max(abs(numeric), 1.0)
                out.append(CheckResult("moments", f"{what} {lab}", rel, MOMENT_RTOL))
    # matrix elements against oracle inner products <n'| a^dag a |n>
    p = StateParams(alpha_mod=2.18536, r=0.424875, n_extra=2)
    for q in (p, GENERAL.replace(n_extra=2)):
        fam = _oracle_family(q.replace(n_extra=0), 4)
        nop = oracle.number_matrix(fam[0].dim)
        col = nop @ fam[2].coeffs
        for off, val in moments.matrix_elements(q).by_offset().items():
            brute = np.vdot(fam[2 + off].coeffs, col)
            out.append(CheckResult("moments", f"element offset {off:+d} {_label(q)}", abs(brute - val), OP_TOL))
    return out


def closedforms_suite(params=None) -> list[CheckResult]:
    out = []
    for a, r in (params or GRID):
        p = StateParams(alpha_mod=a, r=r)
        fam = _oracle_family(p, 2)
        N = fam[0].dim
        closed = [states.squeezed_coherent_state(a, r, N), states.one_photon_squeezed_closed(a, r, N),
                  states.two_photon_squeezed_closed(a, r, N)]
        for n in range(4):
            rec = states.n_photon_squeezed_recursive(p.replace(n_extra=n), N)
            lab = f"n={n} a={a:g},r={r:g}"
            out.append(CheckResult("closedforms", f"recursion~oracle {lab}", overlap_deficit(rec, fam[n]), OP_TOL))
            if n < 3:
                out.append(CheckResult("closedforms", f"closed~oracle {lab}", overlap_deficit(closed[n], fam[n]), OP_TOL))
                out.append(CheckResult("closedforms", f"closed~recursion {lab}", overlap_deficit(closed[n], rec), OP_TOL))
    for a in (0.5, 2.0, 10.0):
        for n in range(1, 4):
            v = states.n_photon_coherent(a, 0.3, n)
            w = states.n_photon_coherent_0f2(a, 0.3, n, v.dim)
            out.append(CheckResult("closedforms", f"n-coherent binomial~0F2 n={n} a={a:g}", overlap_deficit(v, w), OP_TOL))
            if a <= 2:
                o = oracle.build_state_oracle(StateParams(alpha_mod=a, theta=0.3, n_extra=n), v.dim)
                out.append(CheckResult("closedforms", f"n-coherent~oracle n={n} a={a:g}", overlap_deficit(v, o), OP_TOL))
    return out


def jcm_suite() -> list[CheckResult]:
    out = []
    state = states.coherent_state(2.0, 0.4)
    for delta in (0.0, 2.0):
        params = jcm_mod.JcmParams(1.0, delta, np.linspace(0, 20, 11))
        worst = 0.0
        unitarity = 0.0
        for t in params.t_grid:
            c1, c2 = jcm_mod.amplitudes(state, t, params)
            o1, o2 = oracle.integrate_jcm(state.coeffs, params, t)
            worst = max(worst, np.abs(c1 - o1).max(), np.abs(c2 - o2).max())
            unitarity = max(unitarity, abs(np.sum(np.abs(c1) ** 2 + np.abs(c2) ** 2) - 1.0))
        out.append(CheckResult("jcm", f"closed form~RK4 delta={delta:g}", worst, 1e-6))
        out.append(CheckResult("jcm", f"unitarity delta={delta:g}", unitarity, 1e-10))
    t = np.linspace(0, 60, 3001)
    for label, st in (("coherent a=2", state), ("n-coherent a=2 n=3", states.n_photon_coherent(2.0, 0, 3))):
        gen = jcm_mod.ground_state_probability(st, t, jcm_mod.JcmParams())
        res = jcm_mod.ground_state_probability_resonant(st, t)
        out.append(CheckResult("jcm", f"resonant cosine form {label}", float(np.abs(gen - res).max()), 1e-12))
    return out


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "ladder": ladder_suite,
    "basis": basis_suite,
    "moments": moments_suite,
    "closedforms": closedforms_suite,
    "jcm": jcm_suite,
}


def run(suite: str = "all") -> list[CheckResult]:
    names = list(SUITES) if suite == "all" else [suite]
    results = []
    for name in names:
        results.extend(SUITES[name]())
    return results

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import gammaln

from revival_lab import oracle
from revival_lab.errors import ParameterError, SingularSqueeze, UnderTruncated
from revival_lab.fock import DIM_OVERRIDE_ENV, StateParams, number_expectation_numeric, overlap_deficit
from revival_lab.states import (
    build_state,
    coherent_state,
    n_photon_coherent,
    n_photon_coherent_0f2,
    n_photon_squeezed_recursive,
    one_photon_squeezed_closed,
    squeezed_coherent_general,
    squeezed_coherent_state,
    two_photon_squeezed_closed,
)

# polynomial factors of the explicit one-, two- and three-photon coherent states (real alpha)
LITERAL_POLY = {
    1: lambda k, s: k - s,
    2: lambda k, s: k * (k - 1) - 2 * k * s + s * s,
    3: lambda k, s: k * (k - 1) * (k - 2) - 3 * k * (k - 1) * s + 3 * k * s * s - s ** 3,
}


def literal_n_coherent(a, n, dim):
    k = np.arange(dim, dtype=float)
    s = a * a
    mag = np.exp(-s / 2 + (k - n) * math.log(a) - 0.5 * (gammaln(k + 1) + math.lgamma(n + 1)))
    return mag * LITERAL_POLY[n](k, s)


# ---- coherent ----

def test_coherent_alpha_ten_moments():
    m = number_expectation_numeric(coherent_state(10.0))
    assert m.mean == pytest.approx(100, abs=1e-9)
    assert m.variance == pytest.approx(100, abs=1e-8)


def test_coherent_vacuum():
    v = coherent_state(0.0)
    assert v.coeffs[0] == 1 and v.norm == 1


def test_coherent_phase():
    v = coherent_state(1.5, 0.4)
    k = 3
    expected = math.exp(-1.125) * 1.5 ** k / math.sqrt(6) * np.exp(1j * 0.4 * k)
    assert v.coeffs[k] == pytest.approx(expected, rel=1e-13)


def test_explicit_dim_too_small_raises():
    with pytest.raises(UnderTruncated):
        coherent_state(10.0, dim=60)


def test_dim_override_is_honoured(monkeypatch):
    monkeypatch.setenv(DIM_OVERRIDE_ENV, "10")
    with pytest.raises(UnderTruncated):
        coherent_state(2.0)
    monkeypatch.setenv(DIM_OVERRIDE_ENV, "80")
    assert coherent_state(2.0).dim == 80


def test_auto_growth_reaches_clean_guard_band():
    v = build_state(StateParams(alpha_mod=1.0, r=1.4, n_extra=2))
    assert not v.under_truncated
    assert v.is_normalized()


# ---- n-photon coherent ----

@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("a", [0.7, 2.0, 10.0])
def test_n_coherent_matches_explicit_sums(n, a):
    v = n_photon_coherent(a, 0.0, n)
    lit = literal_n_coherent(a, n, v.dim)
    lit = lit / np.linalg.norm(lit)
    np.testing.assert_allclose(v.coeffs.real, lit, atol=1e-12)


def test_one_photon_coherent_node_at_four():
    v = n_photon_coherent(2.0, 0.0, 1)
    assert abs(v.coeffs[4]) < 1e-15


def test_three_photon_coherent_matches_oracle():
    v = n_photon_coherent(2.0, 0.0, 3)
    o = oracle.build_state_oracle(StateParams(alpha_mod=2.0, n_extra=3), v.dim)
    assert overlap_deficit(v, o) <= 1e-9


@given(st.floats(0.2, 6), st.floats(-3, 3), st.integers(1, 4))
def test_binomial_and_0f2_forms_agree(a, theta, n):
    v = n_photon_coherent(a, theta, n)
    w = n_photon_coherent_0f2(a, theta, n, v.dim)
    assert overlap_deficit(v, w) < 1e-10


def test_n_coherent_mean_is_shifted_by_n():
    m = number_expectation_numeric(n_photon_coherent(2.0, 0.0, 3))
    assert m.mean == pytest.approx(7.0, abs=1e-9)


def test_0f2_form_needs_nonzero_alpha():
    with pytest.raises(ParameterError):
        n_photon_coherent_0f2(0.0, 0.0, 2)


# ---- squeezed coherent ----

def test_squeezed_fig5_mean():
    m = number_expectation_numeric(squeezed_coherent_state(2.56230, 0.424875))
    assert m.mean == pytest.approx(3, abs=1e-2)


def test_squeezed_fig7_mean():
    m = number_expectation_numeric(squeezed_coherent_state(24.4485, 0.8992))
    assert m.mean == pytest.approx(100, abs=2e-2)


def test_squeezed_r_zero_is_coherent():
    assert overlap_deficit(squeezed_coherent_state(2.0, 0.0), coherent_state(2.0)) < 1e-15


def test_closed_forms_need_positive_r():
    with pytest.raises(SingularSqueeze):
        one_photon_squeezed_closed(2.0, 0.0)
    with pytest.raises(SingularSqueeze):
        two_photon_squeezed_closed(2.0, 0.0)


@given(st.floats(0, 4), st.floats(0.05, 1.0))
def test_squeezed_matches_oracle(a, r):
    v = squeezed_coherent_state(a, r)
    o = oracle.build_state_oracle(StateParams(alpha_mod=a, r=r), v.dim)
    assert overlap_deficit(v, o) < 1e-9


@given(st.floats(0, 3), st.floats(-3, 3), st.floats(0.05, 0.8), st.floats(-3, 3))
def test_general_phase_squeezed_matches_oracle(a, theta, r, phi):
    p = StateParams(alpha_mod=a, theta=theta, r=r, phi=phi, lock_phi_to_2theta=False)
    v = squeezed_coherent_general(p)
    o = oracle.build_state_oracle(p, v.dim)
    assert overlap_deficit(v, o) < 1e-9


# ---- n-photon squeezed ----

def test_one_photon_closed_form_matches_recursion():
    p = StateParams(alpha_mod=2.56230, r=0.424875, n_extra=1)
    rec = n_photon_squeezed_recursive(p)
    assert overlap_deficit(one_photon_squeezed_closed(2.56230, 0.424875, rec.dim), rec) <= 1e-9


def test_two_photon_fig6_mean():
    p = StateParams(alpha_mod=2.18536, r=0.424875, n_extra=2)
    assert number_expectation_numeric(n_photon_squeezed_recursive(p)).mean == pytest.approx(5, abs=1e-2)
    assert number_expectation_numeric(two_photon_squeezed_closed(2.18536, 0.424875)).mean == pytest.approx(5, abs=1e-2)


def test_two_photon_fig8_mean():
    v = two_photon_squeezed_closed(23.92344, 0.8992)
    assert number_expectation_numeric(v).mean == pytest.approx(102, abs=3e-2)


TRIPLE_GRID = [(a, r) for a in (0.5, 2.18536, 4.0) for r in (0.1, 0.424875, 0.8992)]


@pytest.mark.parametrize("a,r", TRIPLE_GRID)
def test_triple_construction_agreement(a, r):
    p = StateParams(alpha_mod=a, r=r)
    N = build_state(p.replace(n_extra=3)).dim + 10
    closed = {0: squeezed_coherent_state(a, r, N), 1: one_photon_squeezed_closed(a, r, N),
              2: two_photon_squeezed_closed(a, r, N)}
    for n in range(4):
        rec = n_photon_squeezed_recursive(p.replace(n_extra=n), N)
        orc = oracle.build_state_oracle(p.replace(n_extra=n), N)
        assert overlap_deficit(rec, orc) < 1e-8
        if n in closed:
            assert overlap_deficit(closed[n], rec) < 1e-8
            assert overlap_deficit(closed[n], orc) < 1e-8


def test_recursion_r_zero_delegates_to_coherent_path():
    p = StateParams(alpha_mod=2.0, n_extra=3)
    assert overlap_deficit(build_state(p), n_photon_coherent(2.0, 0.0, 3)) < 1e-14


def test_recursion_general_phase_matches_oracle():
    p = StateParams(alpha_mod=1.3, theta=0.7, r=0.5, phi=2.1, n_extra=3, lock_phi_to_2theta=False)
    v = n_photon_squeezed_recursive(p)
    assert overlap_deficit(v, oracle.build_state_oracle(p, v.dim)) < 1e-9


def test_recursion_forced_small_dim_raises():
    with pytest.raises(UnderTruncated):
        n_photon_squeezed_recursive(StateParams(alpha_mod=2.18536, r=0.424875, n_extra=2), dim=5)


@given(st.floats(0, 3), st.floats(0, 1.0), st.integers(0, 4))
def test_constructed_states_are_normalized(a, r, n):
    v = build_state(StateParams(alpha_mod=a, r=r, n_extra=n))
    assert v.is_normalized()
    assert not v.under_truncated

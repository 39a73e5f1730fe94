import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from revival_lab.errors import BracketFailure, NoInteriorMinimum, ParameterError
from revival_lab.fock import StateParams
from revival_lab.moments import mean_photon_number, variance_quotient
from revival_lab.optimize import (
    OptimalPoint,
    _radicand,
    best_squeeze,
    certify_local_minimum,
    golden_section_min,
    match_integer_mean,
    minimize_quotient_numeric,
    optimal_alpha_sq,
    optimal_alpha_sq_printed,
    optimal_point,
)


def mp_alpha_sq(r, dps=60):
    with mpmath.workdps(dps):
        e = lambda k: mpmath.e ** (k * mpmath.mpf(r))  # noqa: E731
        R = (441 * e(16) - 5488 * e(12) + 560 * e(10) + 31502 * e(8) - 13120 * e(6)
             + 13296 * e(4) - 3440 * e(2) + 1849)
        return (-57 + 21 * e(8) - 164 * e(4) + 40 * e(2) + mpmath.sqrt(R)) / 80


def quotient(n, r, a):
    return variance_quotient(StateParams(alpha_mod=a, r=r, n_extra=n))


# ---- closed form ----

def test_r_zero_exact_rational():
    # u = 1: rational part -160/80, radicand 25600 = 160^2
    rational = Fraction(-57 + 21 - 164 + 40, 80)
    assert rational == -2
    assert sum((441, -5488, 560, 31502, -13120, 13296, -3440, 1849)) == 25600
    assert optimal_alpha_sq(0.0) == 0.0


@pytest.mark.parametrize("r", [1e-12, 1e-6, 1e-3, 0.05, 0.1, 0.3, 0.424875, 0.6, 0.8992, 1.0, 1.5, 2.5])
def test_closed_form_matches_high_precision(r):
    assert optimal_alpha_sq(r) == pytest.approx(float(mp_alpha_sq(r)), rel=1e-13)


def test_printed_evaluation_loses_accuracy_near_zero():
    r = 1e-8
    ref = float(mp_alpha_sq(r))
    assert optimal_alpha_sq(r) == pytest.approx(ref, rel=1e-12)
    assert abs(optimal_alpha_sq_printed(r) - ref) > 1e-9 * ref


def test_preset_alphas():
    assert optimal_alpha_sq(0.424875) == pytest.approx(4.7758, abs=1e-3)
    assert math.sqrt(optimal_alpha_sq(0.424875)) == pytest.approx(2.18536, abs=5e-6)
    assert optimal_alpha_sq(0.8992) == pytest.approx(572.33, abs=0.05)
    assert math.sqrt(optimal_alpha_sq(0.8992)) == pytest.approx(23.92344, abs=5e-5)


@given(st.floats(0, 3))
def test_radicand_factorisation(r):
    u = math.exp(2 * r)
    P = 21 * u ** 4 - 164 * u ** 2 + 40 * u - 57
    diff = 280 * (u * u - 1) * (5 * u ** 4 - 4 * u ** 3 + 30 * u * u - 4 * u + 5)
    assert _radicand(u) - P * P == pytest.approx(diff, rel=1e-9, abs=1e-6 * u ** 8)
    assert _radicand(u) >= 0


@given(st.floats(0, 2))
def test_curve_is_increasing_and_nonnegative(r):
    a0, a1 = optimal_alpha_sq(r), optimal_alpha_sq(r + 1e-3)
    assert 0 <= a0 < a1


def test_negative_r_rejected():
    with pytest.raises(ParameterError):
        optimal_alpha_sq(-0.1)


# ---- numeric minimizer ----

def test_quotient_is_monotone_in_alpha_at_fixed_r():
    qs = [quotient(2, 0.424875, a) for a in np.linspace(0.1, 6, 60)]
    d = np.diff(qs)
    assert np.all(d > 0) or np.all(d < 0)


def test_preset_point_is_stationary_in_r():
    a = math.sqrt(optimal_alpha_sq(0.424875))
    h = 1e-5
    dq_dr = (quotient(2, 0.424875 + h, a) - quotient(2, 0.424875 - h, a)) / (2 * h)
    dq_da = (quotient(2, 0.424875, a + h) - quotient(2, 0.424875, a - h)) / (2 * h)
    assert abs(dq_dr) < 1e-6
    assert abs(dq_da) > 1e-3


@pytest.mark.parametrize("a", [0.5, 2.18536, 10.0])
def test_best_squeeze_matches_scipy(a):
    ref = minimize_scalar(lambda r: quotient(2, r, a), bounds=(0, 4), method="bounded",
                          options={"xatol": 1e-12}).x
    assert best_squeeze(2, a) == pytest.approx(ref, abs=1e-6)


def test_numeric_minimizer_reproduces_preset():
    assert minimize_quotient_numeric(2, 0.424875) == pytest.approx(2.18536, abs=1e-4)


def test_numeric_minimizer_tracks_zero_limit():
    assert minimize_quotient_numeric(2, 1e-4) == pytest.approx(math.sqrt(optimal_alpha_sq(1e-4)), rel=1e-4)
    assert minimize_quotient_numeric(2, 1e-4) < 0.02


def test_numeric_minimizer_cross_validation():
    t0 = time.perf_counter()
    for r in np.round(np.arange(0.1, 1.01, 0.1), 10):
        num = minimize_quotient_numeric(2, r) ** 2
        assert num == pytest.approx(optimal_alpha_sq(r), rel=1e-5)
    assert time.perf_counter() - t0 < 5.0


def test_zero_photon_analogue():
    a = minimize_quotient_numeric(0, 0.424875)
    assert a == pytest.approx(2.78854, abs=1e-4)
    ref = minimize_scalar(lambda r: quotient(0, r, a), bounds=(0.1, 1), method="bounded",
                          options={"xatol": 1e-12}).x
    assert ref == pytest.approx(0.424875, abs=1e-6)


def test_numeric_minimizer_rejects_r_zero():
    with pytest.raises(ParameterError):
        minimize_quotient_numeric(2, 0.0)


def test_no_interior_minimum_when_r_too_large():
    with pytest.raises(NoInteriorMinimum):
        minimize_quotient_numeric(2, 1.5, alpha_max=20.0)


def test_golden_section_on_parabola():
    x, fx = golden_section_min(lambda x: (x - 0.3) ** 2 + 1, -2, 2)
    assert x == pytest.approx(0.3, abs=1e-7)
    assert fx == pytest.approx(1.0)


# ---- optimal points and integer matching ----

def test_optimal_point_and_certificate():
    pt = optimal_point(0.424875)
    assert isinstance(pt, OptimalPoint)
    assert pt.mean_n == pytest.approx(5.0, abs=1e-4)
    assert pt.variance == pytest.approx(pt.quotient * pt.mean_n)
    assert certify_local_minimum(pt)
    off = OptimalPoint(0.6, pt.alpha_sq, pt.mean_n, pt.quotient)
    assert not certify_local_minimum(off)


def test_optimal_point_at_r_zero():
    pt = optimal_point(0.0)
    assert pt.alpha_sq == 0 and pt.mean_n == 2 and pt.quotient == 0


@pytest.mark.parametrize("target,r,alpha", [(5, 0.4248754, 2.1853664), (102, 0.8991787, 23.92119)])
def test_match_integer_mean(target, r, alpha):
    r_found, a_found = match_integer_mean(2, target)
    assert r_found == pytest.approx(r, abs=1e-6)
    assert a_found == pytest.approx(alpha, abs=1e-4)
    assert mean_photon_number(StateParams(alpha_mod=a_found, r=r_found, n_extra=2)) == pytest.approx(target, abs=1e-6)


def test_match_integer_mean_against_presets():
    r5, a5 = match_integer_mean(2, 5)
    assert r5 == pytest.approx(0.424875, abs=1e-5) and a5 == pytest.approx(2.18536, abs=1e-4)
    r102, a102 = match_integer_mean(2, 102)
    assert r102 == pytest.approx(0.8992, abs=1e-4) and a102 == pytest.approx(23.92344, rel=1e-4)


def test_match_integer_mean_edges():
    assert match_integer_mean(2, 2) == (0.0, 0.0)
    with pytest.raises(ParameterError):
        match_integer_mean(2, 1)
    with pytest.raises(BracketFailure):
        match_integer_mean(2, 1e9)
    with pytest.raises(ParameterError):
        match_integer_mean(2, 5, r_bracket=(1.0, 0.5))


def test_zero_photon_integer_match_uses_numeric_curve():
    r, a = match_integer_mean(0, 3, r_bracket=(0.05, 1.0))
    assert mean_photon_number(StateParams(alpha_mod=a, r=r)) == pytest.approx(3.0, abs=1e-6)
    assert best_squeeze(0, a) == pytest.approx(r, abs=1e-6)

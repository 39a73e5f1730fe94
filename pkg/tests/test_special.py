import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revival_lab import _pykernels, kernels
from revival_lab.special import hermite_eval, hermite_series, hermite_table, hypergeom_0F2_poly


def gamma_ratio_series(n, k, z):
    """0F2 term by term from the Gamma-ratio form; 1/Gamma at a non-positive integer is 0."""
    total = Fraction(0)
    for j in range(max(n, k) + 2):
        if j > n or j > k:
            continue
        num = math.factorial(n) * math.factorial(k)
        den = math.factorial(n - j) * math.factorial(k - j) * math.factorial(j)
        total += Fraction(num, den) * Fraction(z) ** j
    return total


def hermite_exact(k, x):
    """Physicists' Hermite polynomial from the explicit sum, exact for integer x."""
    return math.factorial(k) * sum(
        Fraction((-1) ** m * (2 * x) ** (k - 2 * m), math.factorial(m) * math.factorial(k - 2 * m))
        for m in range(k // 2 + 1)
    )


# ---- 0F2 ----

def test_0f2_small_example():
    z = Fraction(1, 3)
    assert hypergeom_0F2_poly(2, 3, z) == 1 + 6 * z + 6 * z ** 2


@pytest.mark.parametrize("z", [-1, Fraction(-1, 4), 1])
def test_0f2_matches_exact_terms(z):
    for n in range(11):
        for k in range(11):
            exact = gamma_ratio_series(n, k, z)
            assert hypergeom_0F2_poly(n, k, z) == exact
            assert hypergeom_0F2_poly(n, k, float(z)) == pytest.approx(float(exact), rel=1e-14, abs=1e-14)


def test_0f2_degree_zero_is_one():
    assert hypergeom_0F2_poly(0, 7, 0.3) == 1
    assert hypergeom_0F2_poly(5, 0, -2.0) == 1


def test_0f2_is_symmetric():
    for n in range(6):
        for k in range(6):
            assert hypergeom_0F2_poly(n, k, Fraction(2, 7)) == hypergeom_0F2_poly(k, n, Fraction(2, 7))


def test_0f2_rejects_negative_order():
    with pytest.raises(ValueError):
        hypergeom_0F2_poly(-1, 2, 0.5)


@given(st.integers(0, 12), st.integers(0, 12), st.fractions(-3, 3, max_denominator=50))
def test_0f2_exact_property(n, k, z):
    assert hypergeom_0F2_poly(n, k, z) == gamma_ratio_series(n, k, z)


# ---- Hermite ----

@pytest.mark.parametrize("k", range(26))
def test_hermite_integer_values_at_one(k):
    h = hermite_eval(k, 1.0)
    exact = hermite_exact(k, 1)
    assert h.value.real == pytest.approx(float(exact), rel=1e-13, abs=1e-12)
    assert h.value.imag == 0


def test_hermite_stays_finite_to_300():
    for x in (0.3, 1.0, 7.5, 40.0, 1e3):
        table = hermite_table(300, x)
        for h in table:
            assert np.isfinite(h.value_scaled) and np.isfinite(h.log_scale)
        ref = mpmath.log(abs(mpmath.hermite(300, x)))
        assert table[-1].log_abs == pytest.approx(float(ref), rel=1e-12)


def test_hermite_overflowing_value_reported_as_inf():
    h = hermite_eval(300, 1e3)
    assert h.log_abs > 709
    assert not np.isfinite(h.value)


def test_hermite_complex_argument():
    x = 0.4 - 1.1j
    for k in (0, 1, 5, 17):
        ref = complex(mpmath.hermite(k, x))
        assert hermite_eval(k, x).value == pytest.approx(ref, rel=1e-12)


@given(st.floats(-20, 20), st.integers(2, 120))
def test_hermite_three_term_recurrence(x, k):
    t = hermite_table(k, x)
    # H_{k} = 2x H_{k-1} - 2(k-1) H_{k-2}, checked in log-scaled form
    lhs = t[k].value_scaled
    s1 = math.exp(t[k - 1].log_scale - t[k].log_scale)
    s2 = math.exp(t[k - 2].log_scale - t[k].log_scale)
    rhs = 2 * x * t[k - 1].value_scaled * s1 - 2 * (k - 1) * t[k - 2].value_scaled * s2
    scale = abs(2 * x * t[k - 1].value_scaled * s1) + abs(2 * (k - 1) * t[k - 2].value_scaled * s2)
    assert abs(lhs - rhs) <= 1e-12 * max(scale, 1e-300)


def test_backends_agree_on_hermite():
    for x in (0.0, 1.0, 3.3, 12.0 + 0.5j):
        m1, e1 = _pykernels.hermite_scaled(x, 250)
        m2, e2 = kernels.hermite_scaled(x, 250)
        np.testing.assert_allclose(m1 * np.exp(e1 - e1[-1]), m2 * np.exp(e2 - e1[-1]), rtol=1e-13, atol=0)


def test_hermite_series_combines_orders():
    x = 0.8
    logc = np.log(np.arange(1, 6, dtype=float))
    out = hermite_series(logc, np.full(5, 0.5 + 0j), np.full(5, -1.0 + 0j), x, 4)
    for k in range(5):
        ref = (k + 1) * (0.5 * float(mpmath.hermite(k + 1, x)) - float(mpmath.hermite(k, x)))
        assert out[k] == pytest.approx(ref, rel=1e-12, abs=1e-12)

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantfreq.harmonic import (
    Harmonic,
    HarmonicSum,
    evaluate,
    exact_derivative,
    forward_difference,
    harmonic_sum,
    mean_square,
    velocity_estimate,
)


def test_harmonic_validation():
    with pytest.raises(ValueError):
        Harmonic(-1.0, 1.0)
    with pytest.raises(ValueError):
        Harmonic(1.0, math.inf)
    with pytest.raises(ValueError):
        Harmonic(1.0, -2.0)


def test_cutoff_is_max_frequency():
    s = harmonic_sum([(1, 10, 0), (0.2, 2000, 0.3), (3, 50, 1)])
    assert s.cutoff_hz == 2000
    with pytest.raises(ValueError):
        HarmonicSum(()).cutoff_hz


def test_eval_examples():
    assert evaluate(HarmonicSum.single(1, 0, 0), 3.7) == 1.0
    assert evaluate(HarmonicSum.single(2, 1, 0), 0.25) == pytest.approx(0.0, abs=1e-15)
    s = harmonic_sum([(1, 1, 0), (0.5, 3, math.pi / 4)])
    expected = math.cos(0.2 * math.pi) + 0.5 * math.cos(0.6 * math.pi + math.pi / 4)
    assert evaluate(s, 0.1) == pytest.approx(expected, rel=1e-14)


def test_eval_rejects_nonfinite_time():
    with pytest.raises(ValueError):
        evaluate(HarmonicSum.single(), math.nan)


def test_exact_derivative_identity_and_second():
    s = HarmonicSum.single(1.0, 7.0, 0.0)
    assert exact_derivative(s, 0) is s
    d2 = exact_derivative(s, 2).terms[0]
    assert d2.amplitude == pytest.approx((2 * math.pi * 7) ** 2)
    assert d2.phase_rad == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        exact_derivative(s, -1)


def test_exact_derivative_matches_central_difference():
    s = HarmonicSum.single(3.0, 2.0, 0.1)
    d = exact_derivative(s, 1)
    assert d.terms[0].amplitude == pytest.approx(3 * 4 * math.pi)
    h = 1e-6
    for t in np.random.default_rng(1).uniform(-5, 5, 20):
        numeric = (evaluate(s, t + h) - evaluate(s, t - h)) / (2 * h)
        exact = evaluate(d, t)
        assert numeric == pytest.approx(exact, rel=1e-5, abs=1e-5 * 12 * math.pi)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_forward_difference_kills_constants(k):
    assert forward_difference(lambda t: 4.2 + 0 * t, k, 0.3, 1.0) == pytest.approx(0, abs=1e-12)
    assert forward_difference(lambda t: 7, k, 0.3, 1.0) == 0
    assert forward_difference(HarmonicSum.single(4.2, 0.0), k, 0.3, 1.0) == pytest.approx(0, abs=1e-12)


def test_forward_difference_linear_and_square():
    assert forward_difference(lambda t: t, 1, 0.5, 1.0) == 0.5
    for dt in (0.1, 0.37, 2.0):
        for t in (-1.0, 0.0, 3.3):
            assert forward_difference(lambda x: x**2, 2, dt, t) == pytest.approx(2 * dt**2, rel=1e-12)


def test_forward_difference_rejects_bad_args():
    with pytest.raises(ValueError):
        forward_difference(lambda t: t, 0, 0.1, 0.0)
    with pytest.raises(ValueError):
        forward_difference(lambda t: t, 1, 0.0, 0.0)
    with pytest.raises(ValueError):
        velocity_estimate(lambda t: t, 1, -1.0, 0.0)


def test_velocity_estimate_examples():
    assert velocity_estimate(lambda t: t**2, 2, 0.01, 5.0) == pytest.approx(2.0, rel=1e-9)
    cos1 = HarmonicSum.single(1.0, 1.0, 0.0)
    # scalar oracle: (cos(0.02 pi) - 1) / 0.01
    assert velocity_estimate(cos1, 1, 0.01, 0.0) == pytest.approx(-0.1973271571728441, rel=1e-12)
    assert velocity_estimate(cos1, 1, 1e-8, 0.25) == pytest.approx(-2 * math.pi, abs=1e-5)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("dt", [1e-3, 1e-1])
def test_monomial_gives_factorial(k, dt):
    est = velocity_estimate(lambda x: x**k, k, dt, 0.0)
    assert est == pytest.approx(math.factorial(k), rel=1e-10)


@given(k=st.integers(1, 6), num=st.integers(1, 1000), t=st.fractions(-10, 10))
@settings(max_examples=80, deadline=None)
def test_monomial_exact_in_rational_arithmetic(k, num, t):
    dt = Fraction(num, 1000)
    assert velocity_estimate(lambda x: x**k, k, dt, t) == math.factorial(k)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_monomial_float_offset_origin(k):
    # away from t=0 float rounding of f(t) is amplified by ~2^k / dt^k
    dt, t = 0.1, 0.5
    est = velocity_estimate(lambda x: x**k, k, dt, t)
    assert est == pytest.approx(math.factorial(k), rel=1e-11)


def test_harmonic_path_matches_generic_callable():
    s = harmonic_sum([(1, 3, 0.2), (0.4, 11, 1.0)])
    t = np.linspace(0, 1, 101)
    generic = forward_difference(lambda x: evaluate(s, x), 3, 0.01, t)
    np.testing.assert_allclose(forward_difference(s, 3, 0.01, t), generic, rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("F", [1.0, 50.0])
def test_convergence_first_order(F):
    s = HarmonicSum.single(1.0, F, 0.3)
    d = exact_derivative(s, 1)
    t = 0.123 / F
    errs = [abs(velocity_estimate(s, 1, dt, t) - evaluate(d, t)) for dt in (1e-3 / F, 5e-4 / F)]
    assert errs[1] / errs[0] == pytest.approx(0.5, rel=0.2)


@given(
    a=st.floats(-3, 3), b=st.floats(-3, 3),
    k=st.integers(1, 4), dt=st.floats(1e-3, 0.5), t=st.floats(-2, 2),
)
@settings(max_examples=60, deadline=None)
def test_forward_difference_is_linear(a, b, k, dt, t):
    f = lambda x: np.cos(3 * x) + x**3  # noqa: E731
    g = lambda x: np.sin(x) * x  # noqa: E731
    lhs = forward_difference(lambda x: a * f(x) + b * g(x), k, dt, t)
    rhs = a * forward_difference(f, k, dt, t) + b * forward_difference(g, k, dt, t)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


def test_mean_square_examples():
    s = HarmonicSum.single(2.5, 3.0, 0.7)
    assert mean_square(s, 0.0, 4 / 3.0) == pytest.approx(2.5**2 / 2, rel=1e-12)
    assert mean_square(lambda t: 0.0 * t, 0.0, 1.0) == 0.0
    two = harmonic_sum([(1.0, 2.0, 0.0), (0.5, 3.0, 1.0)])
    assert mean_square(two, 0.0, 1.0) == pytest.approx(0.5 + 0.125, rel=1e-12)


def test_mean_square_matches_scipy_quadrature():
    from scipy import integrate

    two = harmonic_sum([(1.0, 2.0, 0.0), (0.5, 3.0, 1.0)])
    ref, _ = integrate.quad(lambda t: evaluate(two, t) ** 2, 0.0, 1.0, limit=200)
    assert mean_square(two, 0.0, 1.0) == pytest.approx(ref, rel=1e-10)


def test_mean_square_errors():
    with pytest.raises(ValueError):
        mean_square(lambda t: t, 0.0, 0.0)
    with pytest.raises(ValueError):
        mean_square(lambda t: t, 0.0, 1.0, samples=1)
    with pytest.raises(ValueError):
        mean_square(lambda t: np.where(t > 0.5, np.nan, t), 0.0, 1.0)


@given(theta=st.floats(-10, 10), periods=st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_mean_square_phase_invariant(theta, periods):
    base = mean_square(HarmonicSum.single(1.3, 5.0, 0.0), 0.0, periods / 5.0)
    shifted = mean_square(HarmonicSum.single(1.3, 5.0, theta), 0.0, periods / 5.0)
    assert shifted == pytest.approx(base, rel=1e-9)

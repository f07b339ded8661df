"""Adaptive Gauss-Kronrod integration and cumulative integral tables."""
import math

import numpy as np
import pytest

from evolutes.errors import IntegrationFailure
from evolutes.quadrature import CumulativeIntegral, adaptive_integral


def test_smooth_integral_to_tolerance():
    got = adaptive_integral(lambda t: 4.0 / (1.0 + t * t), 0.0, 1.0)
    assert abs(got - math.pi) < 1e-11


def test_oscillatory_integral():
    got = adaptive_integral(lambda t: np.sin(40.0 * t), 0.0, math.pi)
    want = (1.0 - math.cos(40.0 * math.pi)) / 40.0
    assert abs(got - want) < 1e-10


def test_kinked_integrand():
    # |t - 1| is the shape a cusp speed has; bisection isolates the kink
    got = adaptive_integral(lambda t: np.abs(t - 1.0), 0.0, 4.0)
    assert abs(got - 5.0) < 1e-10


def test_divergent_integrand_raises():
    with pytest.raises(IntegrationFailure):
        adaptive_integral(lambda t: 1.0 / t, 0.0, 1.0)


def test_cumulative_matches_closed_form():
    table = CumulativeIntegral(np.cos, 0.0, 2.0)
    ts = np.linspace(0.0, 2.0, 41)
    np.testing.assert_allclose(table(ts), np.sin(ts), atol=1e-11)
    assert abs(table.total - math.sin(2.0)) < 1e-11


def test_cumulative_offset_constant():
    table = CumulativeIntegral(np.cos, 0.0, 2.0, c0=5.0)
    assert abs(float(table(0.0)) - 5.0) < 1e-14
    assert abs(float(table(2.0)) - (5.0 + math.sin(2.0))) < 1e-11


def test_cumulative_inverse_roundtrip():
    # strictly increasing integrand keeps the map invertible
    table = CumulativeIntegral(lambda t: 1.0 + 0.5 * np.sin(t), 0.0, 6.0)
    ts = np.linspace(0.0, 6.0, 25)
    vals = table(ts)
    back = table.inverse(vals)
    np.testing.assert_allclose(back, ts, atol=1e-10)

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feynman_checkers.errors import DomainError
from feynman_checkers.lattice import LatticeParams, iter_rows
from feynman_checkers.special import (
    AsymptoteParams,
    a1_zero_sequence,
    a1_zero_via_legendre,
    asymptotic_a1_zero,
    legendre,
    legendre_abel_sum,
    legendre_argument,
    legendre_generating_function,
    legendre_sequence,
    legendre_sum_closed,
)


def test_low_degrees():
    assert legendre(0, 0.3) == 1.0
    assert legendre(1, 0.3) == 0.3
    assert legendre(2, 0.5) == pytest.approx(-0.125, abs=1e-16)
    assert legendre(3, 0.5) == pytest.approx(-0.4375, abs=1e-16)


@pytest.mark.parametrize("n", [0, 1, 7, 100, 100_000])
def test_value_at_one(n):
    assert legendre(n, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert legendre(n, -1.0) == pytest.approx((-1) ** n, abs=1e-12)


@pytest.mark.parametrize("m", [5, 500, 50_000])
def test_even_degree_at_zero(m):
    # P_{2m}(0) = (-1)^m C(2m, m) / 4^m
    log_mag = math.lgamma(2 * m + 1) - 2 * math.lgamma(m + 1) - 2 * m * math.log(2)
    assert legendre(2 * m, 0.0) == pytest.approx((-1) ** m * math.exp(log_mag), rel=1e-12)
    assert legendre(2 * m + 1, 0.0) == 0.0


def _mp_legendre(n, x):
    """``P_n`` and ``P_n'`` at the exact binary value of ``x``, in 50 digits."""
    with mpmath.workdps(50):
        x = mpmath.mpf(x)
        prev, cur = mpmath.mpf(1), x
        if n == 0:
            return 1.0, 0.0
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
        if abs(x) == 1:
            deriv = x ** (n + 1) * n * (n + 1) / 2
        else:
            deriv = n * (x * cur - prev) / (x * x - 1)
        return float(cur), float(deriv)


def _tolerance(ref, deriv, x):
    # 1e-12 relative, plus what an input perturbation of a few ulps costs:
    # near x = +-1 the condition number |x P'/P| is about n^2/2
    return 1e-12 * abs(ref) + 1e-15 + 4 * 2.3e-16 * abs(x * deriv)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 10_000), x=st.floats(-1, 1))
def test_against_mpmath(n, x):
    ref = float(mpmath.legendre(n, x))
    _, deriv = _mp_legendre(n, x)
    assert abs(legendre(n, x) - ref) <= _tolerance(ref, deriv, x)


@pytest.mark.parametrize("x", [0.3, -0.71, 0.999, 1 - 2**-30])
def test_degree_1e5_against_high_precision(x):
    ref, deriv = _mp_legendre(100_000, x)
    assert abs(legendre(100_000, x) - ref) <= _tolerance(ref, deriv, x)


@pytest.mark.parametrize("x", [0.2, 0.55, 0.93])
def test_relative_accuracy_away_from_the_ends(x):
    # with P_n not small and |x| well inside, plain 1e-12 relative holds
    for n in (10, 101, 1000, 10_000):
        ref = float(mpmath.legendre(n, x))
        if abs(ref) > 1e-3:
            assert legendre(n, x) == pytest.approx(ref, rel=1e-12)


def test_bonnet_consistency():
    xs = np.linspace(-1, 1, 41)
    p = legendre_sequence(10_000, xs)
    k = np.arange(1, 10_000)[:, None]
    resid = (k + 1) * p[2:] - (2 * k + 1) * xs * p[1:-1] + k * p[:-2]
    # scaled by n, the size of the terms being combined
    assert np.max(np.abs(resid) / (k + 1)) <= 1e-12


@pytest.mark.parametrize("mu", [0.1, 0.5, 1.0])
def test_decay_like_inverse_sqrt_n(mu):
    x = legendre_argument(mu)
    p = legendre_sequence(10_000, x)
    n = np.arange(1, 10_001)
    theta = 2 * math.atan(mu)
    # Bernstein: |P_n(cos theta)| < sqrt(2 / (pi n sin theta))
    assert np.all(np.abs(p[1:]) * np.sqrt(n) <= math.sqrt(2 / (math.pi * math.sin(theta))) + 1e-12)


def test_sequence_matches_scalar():
    xs = np.array([-0.9, 0.0, 0.33, 0.8])
    seq = legendre_sequence(40, xs)
    for n in (0, 1, 17, 40):
        for j, x in enumerate(xs):
            assert seq[n, j] == pytest.approx(legendre(n, x), abs=1e-15)


def test_negative_degree():
    with pytest.raises(DomainError):
        legendre(-1, 0.2)
    with pytest.raises(DomainError):
        legendre_sequence(-1, 0.2)


def test_argument_is_cos_theta():
    for mu in (0.1, 0.5, 1.0):
        theta = 2 * math.atan(mu)
        assert legendre_argument(mu) == pytest.approx(math.cos(theta), abs=1e-15)
        assert 2 * mu / (1 + mu * mu) == pytest.approx(math.sin(theta), abs=1e-15)


@pytest.mark.parametrize("mu", [0.0, 0.2, 0.5, 0.9, 1.0])
def test_axis_equals_lattice(mu):
    seq = a1_zero_sequence(499, mu)
    params = LatticeParams.floating(mu)
    for row in iter_rows(params, 1000):
        if row.t % 2 == 0:
            n = row.t // 2 - 1
            assert seq[n] == pytest.approx(row.amplitude(0).a1, abs=1e-12)
    assert a1_zero_via_legendre(10, mu) == pytest.approx(seq[10], abs=1e-15)


def test_axis_requires_unit_interval():
    with pytest.raises(DomainError):
        a1_zero_via_legendre(3, 1.5)
    with pytest.raises(DomainError):
        a1_zero_sequence(3, -0.1)


def test_generating_function_via_abel():
    for x in (0.2, 0.6):
        for r in (0.5, 0.9, 0.99):
            assert legendre_abel_sum(x, r) == pytest.approx(
                legendre_generating_function(x, r), rel=1e-12
            )


def test_abel_limit_is_closed_sum():
    x = 0.6
    closed = legendre_sum_closed(x)
    assert legendre_generating_function(x, 1.0) == pytest.approx(closed, rel=1e-15)
    assert legendre_abel_sum(x, 0.999) == pytest.approx(closed, rel=1e-2)


def test_closed_sum_domain():
    for x in (0.0, 1.0, -0.5):
        with pytest.raises(DomainError):
            legendre_sum_closed(x)
    with pytest.raises(DomainError):
        legendre_abel_sum(0.5, 1.0)


def test_partial_sums_oscillate_about_closed_value():
    x = 0.6
    partial = np.cumsum(legendre_sequence(20_000, x))
    tail = partial[10_000:]
    closed = legendre_sum_closed(x)
    assert tail.min() < closed < tail.max()
    assert abs(tail.mean() - closed) < 1e-3


def test_envelope_value():
    params = AsymptoteParams(100, 0.5)
    assert params.envelope == pytest.approx(math.sqrt(0.5 / (math.pi * 100)), rel=1e-15)
    assert params.envelope == pytest.approx(0.0399, abs=1e-4)


def test_envelope_matches_szego_prefactor():
    # sqrt(2/(pi n sin theta)) * mu/sqrt(1+mu^2) == sqrt(mu/(pi n))
    for mu in (0.1, 0.5, 0.9):
        n = 321
        theta = 2 * math.atan(mu)
        szego = math.sqrt(2 / (math.pi * n * math.sin(theta))) * mu / math.sqrt(1 + mu * mu)
        assert AsymptoteParams(n, mu).envelope == pytest.approx(szego, rel=1e-14)
        # a prefactor of sqrt(mu/(2 pi n)) would be short by sqrt(2)
        assert szego / math.sqrt(mu / (2 * math.pi * n)) == pytest.approx(math.sqrt(2), rel=1e-14)


@pytest.mark.parametrize("mu", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_asymptote_remainder_scales(mu):
    seq = a1_zero_sequence(10_000, mu)
    n = np.arange(100, 10_001)
    main = np.array([asymptotic_a1_zero(int(k), mu) for k in n])
    scaled = np.abs(seq[100:] - main) * n**1.5
    assert scaled.max() < 1.0


def test_asymptote_domain():
    with pytest.raises(DomainError):
        asymptotic_a1_zero(100, 0.01)
    with pytest.raises(DomainError):
        asymptotic_a1_zero(100, 0.99)
    with pytest.raises(DomainError):
        asymptotic_a1_zero(0, 0.5)
    with pytest.raises(DomainError):
        AsymptoteParams(10, 0.5, delta=0)
    assert asymptotic_a1_zero(100, 0.01, delta=0.005) != 0

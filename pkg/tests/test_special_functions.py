"""Tests for zeta_regularized.special_functions — Gamma family and Bernoulli numbers."""

import cmath
import math
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from zeta_regularized.errors import CapacityError, ClampOverflowError, DomainError, PoleError
from zeta_regularized.special_functions import (
    BERNOULLI_JMAX,
    CONSTANTS,
    bernoulli_even,
    bernoulli_numbers,
    bernoulli_table,
    cosh_safe,
    cot_safe,
    coth_safe,
    digamma,
    gamma,
    gamma_integral_oracle,
    log_gamma,
    nonpositive_integer,
    polygamma,
    sinh_safe,
)

ZETA3 = 1.2020569031595942


def rel_err(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------


class TestBernoulli:
    """Tests for the exact Bernoulli table."""

    @pytest.mark.parametrize(
        "j, expected",
        [(1, Fraction(1, 6)), (2, Fraction(-1, 30)), (3, Fraction(1, 42)), (6, Fraction(-691, 2730))],
    )
    def test_even_values(self, j, expected):
        assert bernoulli_even(j) == expected

    def test_first_convention(self):
        assert bernoulli_numbers(1)[1] == Fraction(-1, 2)

    def test_odd_values_vanish(self):
        values = bernoulli_table().values
        assert all(values[2 * j + 1] == 0 for j in range(1, BERNOULLI_JMAX))

    def test_even_signs_alternate(self):
        signs = [bernoulli_even(j) > 0 for j in range(1, BERNOULLI_JMAX + 1)]
        assert signs == [j % 2 == 1 for j in range(1, BERNOULLI_JMAX + 1)]

    def test_defining_recurrence_exact(self):
        values = bernoulli_table().values
        for n in range(1, 2 * BERNOULLI_JMAX + 1):
            assert sum(comb(n + 1, j) * values[j] for j in range(n + 1)) == 0

    def test_beyond_table_is_capacity_error(self):
        with pytest.raises(CapacityError):
            bernoulli_even(BERNOULLI_JMAX + 1)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            bernoulli_numbers(-1)


# ---------------------------------------------------------------------------
# log Γ and Γ
# ---------------------------------------------------------------------------


class TestLogGamma:
    """Tests for log_gamma() and gamma()."""

    def test_one(self):
        assert abs(log_gamma(1)) < 1e-15

    def test_factorial(self):
        assert abs(log_gamma(5) - math.log(24)) < 1e-14

    def test_half(self):
        assert abs(log_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-14

    @pytest.mark.parametrize("z", [0.5 + 1j, 3 - 7j, -2.5 + 0.25j, 0.1 + 30j, 25 + 2j])
    def test_matches_mpmath_exponentiated(self, z):
        expected = complex(mpmath.gamma(z))
        assert rel_err(gamma(z), expected) < 1e-12

    def test_principal_branch_continuous_on_right_half_plane(self):
        expected = complex(mpmath.loggamma(0.3 + 40j))
        assert abs(log_gamma(0.3 + 40j) - expected) < 1e-11

    @pytest.mark.parametrize("z, expected", [(1, 1), (5, 24), (0.5, math.sqrt(math.pi))])
    def test_gamma_values(self, z, expected):
        assert abs(gamma(z) - expected) < 1e-13 * expected

    def test_real_axis_gives_real_values(self):
        assert gamma(-2.5).imag == 0.0
        assert gamma(-2.5).real < 0

    @pytest.mark.parametrize("pole", [0, -1, -7])
    def test_poles(self, pole):
        with pytest.raises(PoleError) as excinfo:
            gamma(pole)
        assert excinfo.value.pole == pole

    def test_overflow_is_signalled(self):
        with pytest.raises(ClampOverflowError):
            gamma(200)

    @settings(max_examples=300, deadline=None)
    @given(floats(min_value=0.5, max_value=10), floats(min_value=-10, max_value=10))
    def test_recurrence(self, re, im):
        z = complex(re, im)
        assert abs(gamma(z + 1) - z * gamma(z)) < 1e-12 * abs(gamma(z + 1))

    @settings(max_examples=300, deadline=None)
    @given(floats(min_value=0.1, max_value=20), floats(min_value=-20, max_value=20))
    def test_conjugate_symmetry(self, re, im):
        z = complex(re, im)
        assert abs(gamma(z.conjugate()) - gamma(z).conjugate()) <= 1e-13 * abs(gamma(z))

    def test_reflection_on_random_grid(self, rng):
        """1/(Γ(z)Γ(-z)) = -(z/π) sin(πz) for 1000 non-integer |z| <= 8."""
        radius = 8 * np.sqrt(rng.uniform(size=1000))
        angle = rng.uniform(0, 2 * np.pi, size=1000)
        checked = 0
        for r, phi in zip(radius, angle):
            z = complex(r * np.cos(phi), r * np.sin(phi))
            if abs(z - round(z.real)) < 1e-3:
                continue
            lhs = 1 / (gamma(z) * gamma(-z))
            rhs = -(z / math.pi) * cmath.sin(math.pi * z)
            assert abs(lhs - rhs) < 1e-9 * max(abs(lhs), abs(rhs))
            checked += 1
        assert checked > 990


# ---------------------------------------------------------------------------
# ψ and ψ⁽ⁿ⁾
# ---------------------------------------------------------------------------


class TestDigamma:
    """Tests for digamma()."""

    def test_one_is_minus_euler_gamma(self):
        assert abs(digamma(1) + CONSTANTS.euler_gamma) < 1e-14

    def test_two(self):
        assert abs(digamma(2) - (1 - CONSTANTS.euler_gamma)) < 1e-14

    def test_half(self):
        assert abs(digamma(0.5) - (-CONSTANTS.euler_gamma - 2 * math.log(2))) < 1e-14

    def test_euler_constant_value(self):
        assert abs(CONSTANTS.euler_gamma - 0.5772156649) < 1e-9

    @pytest.mark.parametrize("z", [1 + 1j, -3.5 + 2j, 0.01 - 5j, 40 + 3j])
    def test_matches_mpmath(self, z):
        assert rel_err(digamma(z), complex(mpmath.digamma(z))) < 1e-12

    @settings(max_examples=300, deadline=None)
    @given(floats(min_value=0.5, max_value=10), floats(min_value=-10, max_value=10))
    def test_recurrence(self, re, im):
        z = complex(re, im)
        assert abs(digamma(z + 1) - digamma(z) - 1 / z) < 1e-12 * max(1.0, abs(digamma(z + 1)))

    def test_pole(self):
        with pytest.raises(PoleError):
            digamma(-2)


class TestPolygamma:
    """Tests for polygamma()."""

    def test_trigamma_one(self):
        assert abs(polygamma(1, 1) - math.pi**2 / 6) < 1e-14

    def test_trigamma_two(self):
        assert abs(polygamma(1, 2) - (math.pi**2 / 6 - 1)) < 1e-14

    def test_tetragamma_one(self):
        assert abs(polygamma(2, 1) - (-2 * ZETA3)) < 1e-13

    @pytest.mark.parametrize("n", [1, 3, 6, 12])
    @pytest.mark.parametrize("z", [2.5 + 1j, 0.3, -1.5 - 0.5j])
    def test_matches_mpmath(self, n, z):
        assert rel_err(polygamma(n, z), complex(mpmath.polygamma(n, z))) < 1e-11

    @pytest.mark.parametrize("n", [0, 13])
    def test_order_out_of_range(self, n):
        with pytest.raises(CapacityError):
            polygamma(n, 1.5)

    def test_pole(self):
        with pytest.raises(PoleError):
            polygamma(2, 0)


# ---------------------------------------------------------------------------
# Quadrature oracle
# ---------------------------------------------------------------------------


class TestGammaIntegralOracle:
    """Tests for gamma_integral_oracle()."""

    @pytest.mark.parametrize(
        "z, expected",
        [(1, 1.0), (2, 1.0), (3.5, 15 / 8 * math.sqrt(math.pi)), (0.5, math.sqrt(math.pi))],
    )
    def test_known_values(self, cfg, z, expected):
        assert abs(gamma_integral_oracle(z, cfg) - expected) < 1e-10 * expected

    @pytest.mark.parametrize("z", [0.1, 1.5 + 1j, 3 + 2j, 10 - 5j, 30])
    def test_agrees_with_log_gamma(self, cfg, z):
        assert rel_err(gamma_integral_oracle(z, cfg), gamma(z)) < 1e-9

    def test_needs_positive_real_part(self, cfg):
        with pytest.raises(DomainError):
            gamma_integral_oracle(-0.5, cfg)


# ---------------------------------------------------------------------------
# Overflow-safe helpers
# ---------------------------------------------------------------------------


class TestSafeTrig:
    """Tests for the clamped hyperbolic and cot helpers."""

    def test_sinh_cosh_within_clamp(self):
        assert sinh_safe(1.0) == pytest.approx(math.sinh(1.0))
        assert cosh_safe(2.0) == pytest.approx(math.cosh(2.0))

    def test_sinh_beyond_clamp(self):
        with pytest.raises(ClampOverflowError):
            sinh_safe(800.0)

    def test_coth_large_arguments(self):
        assert coth_safe(1000.0) == pytest.approx(1.0)
        assert coth_safe(-1000.0) == pytest.approx(-1.0)
        assert coth_safe(25 + 1j) == pytest.approx(1.0)

    def test_coth_matches_cmath(self):
        z = 0.7 - 0.2j
        assert abs(coth_safe(z) - 1 / cmath.tanh(z)) < 1e-14

    def test_cot_large_imaginary(self):
        assert abs(cot_safe(1 + 100j) + 1j) < 1e-14
        assert abs(cot_safe(1 - 100j) - 1j) < 1e-14

    def test_cot_matches_cmath(self):
        z = 0.3 + 0.4j
        assert abs(cot_safe(z) - 1 / cmath.tan(z)) < 1e-14

    def test_cot_pole(self):
        with pytest.raises(PoleError):
            cot_safe(0.0)

    def test_nonpositive_integer_detection(self):
        assert nonpositive_integer(-3) == -3
        assert nonpositive_integer(-3 + 1e-12j) is None
        assert nonpositive_integer(-3 + 1e-12, tol=1e-9) == -3
        assert nonpositive_integer(2) is None

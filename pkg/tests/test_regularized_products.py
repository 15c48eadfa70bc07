"""Tests for zeta_regularized.regularized_products — polynomial and power-form products."""

import cmath
import logging
import math

import pytest

from zeta_regularized.errors import CapacityError, ClampOverflowError, DomainError
from zeta_regularized.hurwitz_lerch import lerch_L
from zeta_regularized.regularized_products import (
    MonicPoly,
    ProductMethod,
    closed_form_even_power,
    closed_form_quadratic,
    closed_form_quartic,
    find_shift_set,
    multiplicativity_ratio,
    power_form_closed_form,
    power_form_polynomial,
    regprod_poly,
    regprod_power_form,
    regprod_power_form_oracle,
)

SQRT_2PI = math.sqrt(2 * math.pi)


def rel_err(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------------------
# MonicPoly
# ---------------------------------------------------------------------------


class TestMonicPoly:
    """Tests for the MonicPoly value type."""

    def test_from_coefficients(self):
        q = MonicPoly.from_coefficients([1, 3, 2])
        assert q.degree == 2
        assert q.coeffs == (3, 2)

    def test_rejects_non_monic(self):
        with pytest.raises(DomainError, match="monic"):
            MonicPoly.from_coefficients([2, 1])

    def test_rejects_constant(self):
        with pytest.raises(DomainError):
            MonicPoly.from_coefficients([1])

    def test_degree_cap(self):
        with pytest.raises(CapacityError):
            MonicPoly(tuple([1] * 33))

    def test_from_shifts(self):
        q = MonicPoly.from_shifts([1, 2])
        assert q.coeffs == pytest.approx((3, 2))

    def test_evaluate(self):
        assert MonicPoly.from_coefficients([1, 0, 1])(2) == 5

    def test_multiply(self):
        product = MonicPoly.from_coefficients([1, 1]) * MonicPoly.from_coefficients([1, 2])
        assert product.coeffs == (3, 2)

    def test_is_real(self):
        assert MonicPoly.from_coefficients([1, 1]).is_real
        assert not MonicPoly.from_coefficients([1, 1j]).is_real


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


class TestFindShiftSet:
    """Tests for find_shift_set()."""

    def test_linear(self):
        result = find_shift_set(MonicPoly.from_coefficients([1, 1]))
        assert result.shifts == (1,)
        assert result.iterations == 0

    def test_two_real_shifts(self):
        result = find_shift_set(MonicPoly.from_coefficients([1, 3, 2]))
        assert [d.real for d in result.shifts] == pytest.approx([1, 2], abs=1e-12)
        assert all(abs(d.imag) < 1e-12 for d in result.shifts)

    def test_imaginary_shifts(self):
        result = find_shift_set(MonicPoly.from_coefficients([1, 0, 1]))
        shifts = sorted(result.shifts, key=lambda d: d.imag)
        assert abs(shifts[0] + 1j) < 1e-12
        assert abs(shifts[1] - 1j) < 1e-12
        assert result.residual < 1e-12

    def test_degree_six(self):
        expected = [0.5, 1 + 1j, 1 - 1j, 2.5, 3 + 0.25j, 4]
        result = find_shift_set(MonicPoly.from_shifts(expected))
        for d in expected:
            assert min(abs(d - found) for found in result.shifts) < 1e-10

    def test_warns_near_pole(self, caplog):
        with caplog.at_level(logging.WARNING):
            result = find_shift_set(MonicPoly.from_coefficients([1, 1, 0]))
        assert any("pole" in message for message in result.warnings)
        assert "pole" in caplog.text

    def test_warns_repeated(self):
        result = find_shift_set(MonicPoly.from_coefficients([1, 6, 9]))
        assert any("repeated" in message for message in result.warnings)
        assert all(abs(d - 3) < 1e-6 for d in result.shifts)
        assert result.residual < 1e-12

    def test_triple_root(self, caplog):
        with caplog.at_level(logging.WARNING):
            result = find_shift_set(MonicPoly.from_coefficients([1, 6, 12, 8]))
        assert list(result.shifts) == pytest.approx([2, 2, 2], abs=1e-10)
        assert "repeated" in caplog.text

    def test_repeated_next_to_simple(self):
        # (t + 1)²(t + 4)
        result = find_shift_set(MonicPoly.from_coefficients([1, 6, 9, 4]))
        assert [d.real for d in result.shifts] == pytest.approx([1, 1, 4], abs=1e-10)
        assert result.residual < 1e-10

    def test_repeated_product_value(self):
        product = regprod_poly(MonicPoly.from_coefficients([1, 6, 9]))
        assert rel_err(product.value, 2 * math.pi / math.gamma(3) ** 2) < 1e-10


# ---------------------------------------------------------------------------
# Gamma-formula products
# ---------------------------------------------------------------------------


class TestRegprodPoly:
    """Tests for regprod_poly()."""

    def test_linear_is_sqrt_two_pi(self):
        result = regprod_poly(MonicPoly.from_coefficients([1, 1]), 0)
        assert abs(result.value - SQRT_2PI) < 1e-13
        assert result.method is ProductMethod.GAMMA_FORMULA

    def test_two_linear_factors(self):
        result = regprod_poly(MonicPoly.from_coefficients([1, 3, 2]), 0)
        assert rel_err(result.value, 2 * math.pi) < 1e-13

    def test_quadratic_from_one(self):
        result = regprod_poly(MonicPoly.from_coefficients([1, 0, 1]), 1)
        assert rel_err(result.value, 2 * math.sinh(math.pi)) < 1e-12
        assert result.value.imag == 0

    def test_zero_factor_rejected_from_zero(self):
        with pytest.raises(DomainError, match="vanishes"):
            regprod_poly(MonicPoly.from_coefficients([1, 1, 0]), 0)

    def test_zero_factor_allowed_from_one(self):
        result = regprod_poly(MonicPoly.from_coefficients([1, 1, 0]), 1)
        assert rel_err(result.value, 2 * math.pi) < 1e-12

    def test_bad_start_index(self):
        with pytest.raises(DomainError):
            regprod_poly(MonicPoly.from_coefficients([1, 1]), 2)

    def test_error_estimate_is_relative(self):
        result = regprod_poly(MonicPoly.from_coefficients([1, 3, 2]), 0)
        assert 0 < result.error_estimate < 1e-12 * abs(result.value)


class TestRegprodPowerForm:
    """Tests for regprod_power_form() and power_form_polynomial()."""

    def test_quadratic_example(self):
        result = regprod_power_form(0, 1, 2, -1)
        assert rel_err(result.value, closed_form_quadratic(1)) < 1e-12

    def test_quadratic_from_one(self):
        result = regprod_power_form(0, 1, 2, -1, start_index=1)
        assert rel_err(result.value, 2 * math.sinh(math.pi)) < 1e-12

    def test_quartic_from_one(self):
        result = regprod_power_form(0, 1, 4, -1, start_index=1)
        expected = 2 * (math.cosh(math.sqrt(2) * math.pi) - math.cos(math.sqrt(2) * math.pi))
        assert rel_err(result.value, expected) < 1e-12

    def test_zero_y_is_power_of_lerch(self):
        result = regprod_power_form(1.5, 0, 3, 1)
        assert rel_err(result.value, lerch_L(1.5).value ** 3) < 1e-13

    @pytest.mark.parametrize("m", [2, 3, 5])
    @pytest.mark.parametrize("eps", [1, -1])
    def test_root_choice_independence(self, m, eps):
        values = [regprod_power_form(0.5, 0.7, m, eps, root_choice=r).value for r in range(m)]
        for value in values[1:]:
            assert rel_err(value, values[0]) < 1e-10

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("y", [0.25, 1.0, 2.0])
    @pytest.mark.parametrize("eps", [1, -1])
    def test_matches_expanded_polynomial(self, m, x, y, eps):
        q = power_form_polynomial(x, y, m, eps)
        vanishes = eps == 1 and (y - x) >= 0 and float(y - x).is_integer()
        if vanishes:
            with pytest.raises(DomainError):
                regprod_power_form(x, y, m, eps)
            with pytest.raises(DomainError):
                regprod_poly(q, 0)
            return
        direct = regprod_power_form(x, y, m, eps).value
        assert rel_err(regprod_poly(q, 0).value, direct) < 1e-9

    def test_power_form_polynomial(self):
        q = power_form_polynomial(1, 2, 2, -1)
        assert q.coeffs == (2, 5)

    def test_vanishing_factor(self):
        with pytest.raises(DomainError, match="vanishes"):
            regprod_power_form(0, 2, 3, 1)

    def test_invalid_root_choice(self):
        with pytest.raises(DomainError, match="root_choice"):
            regprod_power_form(0, 1, 2, -1, root_choice=2)

    def test_invalid_eps(self):
        with pytest.raises(DomainError):
            regprod_power_form(0, 1, 2, 2)

    def test_m_must_be_at_least_two(self):
        with pytest.raises(DomainError, match="m must be >= 2"):
            regprod_power_form(0, 1, 1, -1)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


class TestClosedForms:
    """Tests for the trigonometric closed forms."""

    def test_quadratic_values(self):
        assert closed_form_quadratic(1) == pytest.approx(23.097479, rel=1e-6)
        assert closed_form_quadratic(4) == pytest.approx(4 * math.sinh(2 * math.pi), rel=1e-14)

    def test_quadratic_small_y(self):
        y = 1e-8
        assert rel_err(closed_form_quadratic(y), 2 * math.pi * y) < 1e-6

    def test_quadratic_overflow(self):
        with pytest.raises(ClampOverflowError):
            closed_form_quadratic(1e5)

    def test_quadratic_domain(self):
        with pytest.raises(DomainError):
            closed_form_quadratic(0)

    def test_quartic_value(self):
        u = math.sqrt(2) * math.pi
        assert rel_err(closed_form_quartic(1), 2 * (math.cosh(u) - math.cos(u))) < 1e-14

    def test_quartic_small_y_limit(self):
        assert rel_err(closed_form_quartic(1e-12), 4 * math.pi**2) < 1e-8

    @pytest.mark.parametrize("y", [0.25, 0.5, 1.0, 2.0, 4.0])
    def test_quadratic_against_gamma_formula(self, y):
        product = regprod_power_form(0, math.sqrt(y), 2, -1)
        assert rel_err(product.value, closed_form_quadratic(y)) < 1e-10

    @pytest.mark.parametrize("y", [0.25, 0.5, 1.0, 2.0, 4.0])
    def test_quartic_against_gamma_formula(self, y):
        product = regprod_power_form(0, y**0.25, 4, -1, start_index=1)
        assert rel_err(product.value, closed_form_quartic(y)) < 1e-10

    def test_even_power_reduces_to_sinh(self):
        z = 1.3
        assert rel_err(closed_form_even_power(1, z), 2 * math.sinh(math.pi * z) / z) < 1e-13

    def test_even_power_reduces_to_quartic(self):
        z = 1.1
        assert rel_err(closed_form_even_power(2, z), closed_form_quartic(z**4)) < 1e-12

    def test_even_power_sextic(self):
        product = regprod_power_form(0, 0.8, 6, -1, start_index=1)
        assert rel_err(closed_form_even_power(3, 0.8), product.value) < 1e-10

    def test_power_form_closed_form(self):
        result = power_form_closed_form(0, 1, 2, -1, 0)
        assert result.method is ProductMethod.CLOSED_FORM
        assert rel_err(result.value, 2 * math.sinh(math.pi)) < 1e-13

    def test_power_form_closed_form_absent(self):
        assert power_form_closed_form(0.5, 1, 2, -1) is None
        assert power_form_closed_form(0, 1, 3, -1) is None


# ---------------------------------------------------------------------------
# Multiplicativity
# ---------------------------------------------------------------------------


class TestMultiplicativity:
    """Tests for multiplicativity_ratio()."""

    @pytest.mark.parametrize(
        "q1, q2",
        [([1, 1], [1, 2]), ([1, 3], [1, 3]), ([1, 0, 1], [1, 0, 4])],
    )
    def test_examples(self, q1, q2):
        ratio = multiplicativity_ratio(MonicPoly.from_coefficients(q1), MonicPoly.from_coefficients(q2))
        assert abs(ratio - 1) < 1e-9

    def test_random_pairs(self, rng):
        for _ in range(50):
            shifts = [
                complex(rng.uniform(0.5, 5), rng.uniform(-2, 2)) for _ in range(rng.integers(2, 7))
            ]
            split = int(rng.integers(1, len(shifts)))
            q1 = MonicPoly.from_shifts(shifts[:split])
            q2 = MonicPoly.from_shifts(shifts[split:])
            assert abs(multiplicativity_ratio(q1, q2) - 1) < 1e-9


# ---------------------------------------------------------------------------
# Mellin oracle
# ---------------------------------------------------------------------------


class TestPowerFormOracle:
    """Tests for regprod_power_form_oracle()."""

    def test_sequence_k(self):
        result = regprod_power_form_oracle(0, 0, 1, 1, start_index=1)
        assert result.method is ProductMethod.MELLIN_ORACLE
        assert rel_err(result.value, SQRT_2PI) < 1e-6

    @pytest.mark.parametrize("m", [2, 4])
    @pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
    def test_agrees_with_gamma_formula(self, m, y):
        oracle = regprod_power_form_oracle(0, y ** (1 / m), m, -1, start_index=1)
        gamma_formula = regprod_power_form(0, y ** (1 / m), m, -1, start_index=1)
        assert rel_err(oracle.value, gamma_formula.value) < 1e-6

    def test_needs_nonnegative_theta_shift(self):
        with pytest.raises(DomainError):
            regprod_power_form_oracle(0, 1, 2, -1, start_index=0)

    def test_complex_agreement_from_shifted_start(self):
        oracle = regprod_power_form_oracle(0.5, 1, 3, -1, start_index=1)
        direct = regprod_power_form(0.5, 1, 3, -1, start_index=1)
        assert abs(oracle.value - direct.value) < 1e-6 * abs(direct.value)
        assert cmath.isfinite(oracle.value)

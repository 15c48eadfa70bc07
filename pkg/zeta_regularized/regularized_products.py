"""Zeta-regularized products of polynomial sequences.

For a monic Q(t) = ∏(t + dᵢ) of degree ℓ,

    ⧉∏_{k>=0} Q(k) = ∏ L(dᵢ) = (2π)^{ℓ/2} / ∏ Γ(dᵢ)

and the product from k = 1 replaces dᵢ by dᵢ + 1.
"""

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import CapacityError, ConvergenceError, DomainError
from .hurwitz_lerch import lerch_L
from .special_functions import check_finite, log_gamma, nonpositive_integer, sinh_safe
from .theta_mellin import MELLIN_RELATIVE_ERROR, ThetaSeries, mellin_regprod_oracle

LOGGER = logging.getLogger(__name__)

MAX_DEGREE = 32
ROOT_ITERATIONS = 1000
RESIDUAL_TOL = 1e-10
POLE_WARN_TOL = 1e-8
REPEATED_TOL = 1e-6
CLUSTER_TOL = 1e-3  # roots closer than this (relative) are tried as one multiple root


class ProductMethod(enum.Enum):
    GAMMA_FORMULA = "gamma_formula"
    CLOSED_FORM = "closed_form"
    MELLIN_ORACLE = "mellin_oracle"


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial t^ℓ + c_1 t^{ℓ-1} + ... + c_ℓ.

    ``coeffs`` holds the non-leading coefficients, highest power first.
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("polynomial degree must be >= 1")
        if len(self.coeffs) > MAX_DEGREE:
            raise CapacityError(f"degree {len(self.coeffs)} exceeds the cap of {MAX_DEGREE}")

    @classmethod
    def from_coefficients(cls, full) -> "MonicPoly":
        """Build from all coefficients, leading first; the leading one must be 1."""
        full = [complex(c) for c in full]
        if len(full) < 2:
            raise DomainError("polynomial degree must be >= 1")
        if full[0] != 1:
            raise DomainError(f"polynomial must be monic, leading coefficient is {full[0]}")
        return cls(tuple(full[1:]))

    @classmethod
    def from_shifts(cls, shifts) -> "MonicPoly":
        """∏(t + dᵢ)."""
        full = np.poly(-np.asarray(shifts, dtype=complex))
        return cls(tuple(complex(c) for c in full[1:]))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def full(self) -> np.ndarray:
        return np.array((1.0, *self.coeffs), dtype=complex)

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self.coeffs)

    def __call__(self, t: complex) -> complex:
        return complex(np.polyval(self.full, t))

    def __mul__(self, other: "MonicPoly") -> "MonicPoly":
        product = np.polymul(self.full, other.full)
        return MonicPoly(tuple(complex(c) for c in product[1:]))


@dataclass(frozen=True)
class ShiftSet:
    shifts: tuple[complex, ...]  # Q(t) = ∏(t + dᵢ)
    residual: float
    iterations: int
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class RegProduct:
    value: complex
    start_index: int
    method: ProductMethod
    error_estimate: float


def _durand_kerner(full: np.ndarray) -> tuple[np.ndarray, int]:
    ell = len(full) - 1
    radius = 1.0 + float(np.max(np.abs(full[1:])))
    roots = radius * np.exp(1j * (2 * np.pi * np.arange(ell) / ell + 0.4))
    for iteration in range(1, ROOT_ITERATIONS + 1):
        max_step = 0.0
        for i in range(ell):
            p = roots[i]
            denominator = np.prod(p - np.delete(roots, i))
            if denominator == 0:
                continue
            step = np.polyval(full, p) / denominator
            roots[i] = p - step
            max_step = max(max_step, abs(step))
        if max_step < 1e-15 * max(1.0, float(np.max(np.abs(roots)))):
            return roots, iteration
    return roots, ROOT_ITERATIONS


def _newton(coeffs: np.ndarray, z: complex, steps: int = 30) -> complex:
    slope = np.polyder(coeffs)
    for _ in range(steps):
        derivative = np.polyval(slope, z)
        if derivative == 0:
            break
        step = np.polyval(coeffs, z) / derivative
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def _merge_clusters(full: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Replace each cluster of k nearby roots by the root of Q^(k-1) near its mean.

    Durand-Kerner only converges linearly onto a k-fold root, leaving the copies
    spread by about eps^(1/k); the (k-1)-th derivative has a simple root there.
    """
    remaining = [complex(r) for r in roots]
    merged = []
    while remaining:
        seed = remaining[0]
        radius = CLUSTER_TOL * max(1.0, abs(seed))
        cluster = [r for r in remaining if abs(r - seed) < radius]
        remaining = [r for r in remaining if abs(r - seed) >= radius]
        centre = complex(np.mean(cluster))
        if len(cluster) > 1:
            centre = _newton(np.polyder(full, len(cluster) - 1), centre)
        merged += [centre] * len(cluster)
    return np.array(merged)


def _factor_residual(full: np.ndarray, shifts) -> float:
    # compared at 2ℓ+1 points on the unit circle
    degree = len(full) - 1
    ts = np.exp(2j * np.pi * np.arange(2 * degree + 1) / (2 * degree + 1))
    expected = np.polyval(full, ts)
    factored = np.prod(ts[:, None] + np.asarray(shifts)[None, :], axis=1)
    return float(np.max(np.abs(expected - factored) / np.maximum(1.0, np.abs(expected))))


def _clean(d: complex) -> complex:
    if abs(d.imag) < 1e-14 * max(1.0, abs(d)):
        return complex(d.real, 0.0)
    return d


def _shift_tuple(roots) -> list[complex]:
    return sorted((_clean(complex(-r)) for r in roots), key=lambda d: (d.real, d.imag))


def find_shift_set(q: MonicPoly) -> ShiftSet:
    """Shifts dᵢ with Q(t) = ∏(t + dᵢ), i.e. the negated roots of Q."""
    full = q.full
    if q.degree == 1:
        roots, iterations = np.array([-full[1]]), 0
    else:
        roots, iterations = _durand_kerner(full)
    LOGGER.debug("root finder: degree %d in %d iterations", q.degree, iterations)

    shifts = _shift_tuple(roots)
    residual = _factor_residual(full, shifts)
    if q.degree > 1:
        merged = _shift_tuple(_merge_clusters(full, roots))
        merged_residual = _factor_residual(full, merged)
        if merged_residual < residual:
            shifts, residual = merged, merged_residual
    if not residual < RESIDUAL_TOL:
        raise ConvergenceError(
            f"root finder did not converge in {ROOT_ITERATIONS} iterations (residual {residual:.3g})"
        )

    warnings = []
    for d in shifts:
        pole = nonpositive_integer(d, tol=POLE_WARN_TOL)
        if pole is not None:
            warnings.append(f"shift d={d} is within {POLE_WARN_TOL:g} of the pole {pole}")
    for i, d in enumerate(shifts):
        for e in shifts[i + 1 :]:
            if abs(d - e) < REPEATED_TOL:
                warnings.append(f"repeated shift near d={d}")
    for message in warnings:
        LOGGER.warning(message)
    return ShiftSet(tuple(shifts), residual, iterations, tuple(warnings))


def _check_start(start_index: int) -> None:
    if start_index not in (0, 1):
        raise DomainError(f"start_index must be 0 or 1, got {start_index}")


def regprod_poly(q: MonicPoly, start_index: int = 0) -> RegProduct:
    """⧉∏_{k>=start} Q(k) = (2π)^{ℓ/2} / ∏ Γ(dᵢ + start), summed in log space."""
    _check_start(start_index)
    shift_set = find_shift_set(q)
    log_value = 0.5 * q.degree * math.log(2 * math.pi)
    for d in shift_set.shifts:
        arg = d + start_index
        pole = nonpositive_integer(arg, tol=POLE_WARN_TOL)
        if pole is not None:
            raise DomainError(
                f"Q({start_index - pole}) vanishes (shift d={d}); the product from "
                f"k={start_index} is undefined"
            )
        log_value -= log_gamma(arg)
    value = check_finite(cmath.exp(log_value), "regularized product")
    if q.is_real:
        value = complex(value.real, 0.0)
    error = abs(value) * max(q.degree * 1e-14, shift_set.residual)
    return RegProduct(value, start_index, ProductMethod.GAMMA_FORMULA, error)


def _root_of_sign(eps: int, m: int, root_choice: int) -> complex:
    if eps not in (1, -1):
        raise DomainError(f"eps must be +1 or -1, got {eps}")
    if not 0 <= root_choice < m:
        raise DomainError(f"root_choice must be in [0, {m - 1}], got {root_choice}")
    arg = 0.0 if eps == 1 else math.pi
    return cmath.exp(1j * (arg + 2 * math.pi * root_choice) / m)


def regprod_power_form(
    x: complex,
    y: complex,
    m: int,
    eps: int,
    root_choice: int = 0,
    start_index: int = 0,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> RegProduct:
    """⧉∏_{k>=start} ((k+x)^m - εy^m) as ∏_ξ L(x + start - ξ ε^{1/m} y)."""
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    _check_start(start_index)
    x, y = complex(x), complex(y)
    root = _root_of_sign(eps, m, root_choice)
    value = 1.0 + 0j
    for j in range(m):
        xi = cmath.exp(2j * math.pi * j / m)
        arg = x + start_index - xi * root * y
        pole = nonpositive_integer(arg, tol=POLE_WARN_TOL)
        if pole is not None:
            raise DomainError(f"factor (k+x)^{m} - εy^{m} vanishes at k={start_index - pole}")
        value *= lerch_L(arg, cfg).value
    value = check_finite(value, "regularized product")
    if x.imag == 0 and y.imag == 0:
        value = complex(value.real, 0.0)
    return RegProduct(value, start_index, ProductMethod.GAMMA_FORMULA, abs(value) * m * 1e-12)


def power_form_polynomial(x: complex, y: complex, m: int, eps: int) -> MonicPoly:
    """(t+x)^m - εy^m."""
    x, y = complex(x), complex(y)
    full = [comb(m, j) * x**j for j in range(m + 1)]
    full[-1] -= eps * y**m
    return MonicPoly.from_coefficients(full)


def closed_form_quadratic(y: float, clamp: float = DEFAULT_CONFIG.overflow_clamp) -> complex:
    """⧉∏_{k>=0} (k² + y) = 2√y sinh(π√y)."""
    if not y > 0:
        raise DomainError(f"y must be > 0, got {y}")
    root = math.sqrt(y)
    return complex(2.0 * root * sinh_safe(math.pi * root, clamp).real, 0.0)


def closed_form_quartic(y: float, clamp: float = DEFAULT_CONFIG.overflow_clamp) -> complex:
    """⧉∏_{k>=1} (k⁴ + y) = 2y^{-1/2} (cosh(√2πy^{1/4}) - cos(√2πy^{1/4}))."""
    if not y > 0:
        raise DomainError(f"y must be > 0, got {y}")
    u = math.sqrt(2.0) * math.pi * y**0.25
    # cosh u - cos u = 2 sinh²(u/2) + 2 sin²(u/2)
    half_sinh = sinh_safe(0.5 * u, clamp).real
    difference = 2.0 * half_sinh**2 + 2.0 * math.sin(0.5 * u) ** 2
    return check_finite(complex(2.0 * difference / math.sqrt(y), 0.0), "quartic closed form")


def closed_form_even_power(n: int, z: complex) -> complex:
    """⧉∏_{k>=1} (k^{2n} + z^{2n}) = 2ⁿ ∏_{l<n} sin(π r_l) / r_l, r_l = z e^{iπ(2l+1)/(2n)}."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    value = complex(2**n)
    for j in range(n):
        r = z * cmath.exp(1j * math.pi * (2 * j + 1) / (2 * n))
        value *= cmath.sin(math.pi * r) / r
    value = check_finite(value, "even power closed form")
    if z.imag == 0:
        value = complex(value.real, 0.0)
    return value


def power_form_closed_form(x: complex, y: complex, m: int, eps: int, start_index: int = 0) -> RegProduct | None:
    """The trigonometric closed form when one exists (x = 0, ε = -1, m even), else None."""
    _check_start(start_index)
    if complex(x) != 0 or eps != -1 or m % 2 or complex(y) == 0:
        return None
    value = closed_form_even_power(m // 2, y)
    if start_index == 0:
        value *= complex(y) ** m  # the k = 0 factor
    return RegProduct(value, start_index, ProductMethod.CLOSED_FORM, abs(value) * m * 1e-14)


def multiplicativity_ratio(q1: MonicPoly, q2: MonicPoly, start_index: int = 0) -> complex:
    """⧉∏ Q1Q2 / (⧉∏ Q1 · ⧉∏ Q2); identically 1 for polynomial sequences."""
    joint = regprod_poly(q1 * q2, start_index).value
    return joint / (regprod_poly(q1, start_index).value * regprod_poly(q2, start_index).value)


def regprod_power_form_oracle(
    x: float,
    y: float,
    m: int,
    eps: int,
    start_index: int = 0,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> RegProduct:
    """The power-form product from the Mellin continuation of its theta series."""
    _check_start(start_index)
    if eps not in (1, -1):
        raise DomainError(f"eps must be +1 or -1, got {eps}")
    theta_x = float(x) + start_index - 1
    if theta_x < 0:
        raise DomainError(f"the Mellin oracle needs x + start_index >= 1, got {theta_x + 1}")
    ts = ThetaSeries(m, theta_x, complex(-eps * float(y) ** m))
    value = mellin_regprod_oracle(ts, cfg)
    return RegProduct(value, start_index, ProductMethod.MELLIN_ORACLE, abs(value) * MELLIN_RELATIVE_ERROR)

"""Dirichlet-type series Σ_{k>=1} 1/((k+x)^m + y) and the identities built on them.

Each closed form here has an independent direct-summation counterpart, so
that every identity can be checked as a residual between two methods.
"""

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT_CONFIG, SERIES_CONFIG, EvalConfig, SignConvention
from .errors import DomainError, PoleError
from .hurwitz_lerch import generalized_hurwitz_sum
from .regularized_products import regprod_power_form
from .special_functions import (
    bernoulli_even,
    check_finite,
    coth_safe,
    cot_safe,
    digamma,
    nonpositive_integer,
    polygamma,
)

LOGGER = logging.getLogger(__name__)

POLE_GUARD = 1e-6  # minimum |sin| accepted for a cot argument
TAYLOR_RADIUS = 0.5
TAYLOR_POINTS = 64
DERIVATIVE_STEP = 1e-4


class SeriesMethod(enum.Enum):
    DIRECT_EM = "direct_em"
    DIGAMMA_FORM = "digamma_form"
    TRIG_FORM = "trig_form"


@dataclass(frozen=True)
class SeriesSum:
    m: int
    x: complex
    y: complex
    value: complex
    method: SeriesMethod
    tail_bound: float


# ---------------------------------------------------------------------------
# Series values
# ---------------------------------------------------------------------------


def sum_direct(m: int, x: complex, y: complex, cfg: EvalConfig = SERIES_CONFIG) -> SeriesSum:
    """Partial sum to cfg.trunc plus a binomial Hurwitz tail."""
    if m < 2:
        raise DomainError(f"m must be >= 2 for the series to converge, got {m}")
    value, tail_bound = generalized_hurwitz_sum(m, x, y, 1, cfg)
    return SeriesSum(m, complex(x), complex(y), value, SeriesMethod.DIRECT_EM, tail_bound)


def sum_digamma(
    m: int,
    x: complex,
    y: complex,
    convention: SignConvention = SignConvention.VALIDATED,
    root_choice: int = 0,
) -> SeriesSum:
    """σ/m · Σ_{ξ^m=1} ξω y^{1/m-1} ψ(x - ξω y^{1/m} + 1), ω^m = -1.

    Any of the m roots ω gives the same value; ``root_choice`` picks
    ω = exp(iπ(2r+1)/m). σ is +1, or -1 for PRINTED.
    """
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    if not 0 <= root_choice < m:
        raise DomainError(f"root_choice must be in [0, {m - 1}], got {root_choice}")
    x, y = complex(x), complex(y)
    if y == 0:
        raise DomainError("the digamma form needs y != 0; use sum_direct")
    omega = cmath.exp(1j * math.pi * (2 * root_choice + 1) / m)
    root = y ** (1.0 / m)
    scale = root / y  # y^{1/m - 1}
    total = 0j
    for j in range(m):
        rho = cmath.exp(2j * math.pi * j / m) * omega
        arg = x - rho * root + 1.0
        pole = nonpositive_integer(arg, tol=1e-12)
        if pole is not None:
            raise PoleError(f"ψ argument {arg} is at the pole {pole}; a denominator vanishes", pole)
        total += rho * digamma(arg)
    sign = 1.0 if convention is SignConvention.VALIDATED else -1.0
    value = check_finite(sign * scale * total / m, "digamma form")
    if x.imag == 0 and y.imag == 0:
        value = complex(value.real, 0.0)
    return SeriesSum(m, x, y, value, SeriesMethod.DIGAMMA_FORM, abs(value) * m * 1e-14)


def _quartic_ratio(u: float) -> float:
    """(sinh u + sin u) / (cosh u - cos u), odd in u."""
    if u == 0:
        raise DomainError("quartic ratio has a pole at 0")
    sign = 1.0 if u > 0 else -1.0
    u = abs(u)
    if u < 20.0:
        denominator = 2.0 * math.sinh(0.5 * u) ** 2 + 2.0 * math.sin(0.5 * u) ** 2
        return sign * (math.sinh(u) + math.sin(u)) / denominator
    decay = math.exp(-u)
    numerator = 1.0 - decay * decay + 2.0 * math.sin(u) * decay
    denominator = 1.0 + decay * decay - 2.0 * math.cos(u) * decay
    return sign * numerator / denominator


def sum_trig(m: int, y: float) -> SeriesSum:
    """Closed trigonometric forms at x = 0 for m = 2 and m = 4, y > 0."""
    if not y > 0:
        raise DomainError(f"y must be > 0, got {y}")
    if m == 2:
        root = math.sqrt(y)
        value = -0.5 / y + math.pi / (2.0 * root) * coth_safe(math.pi * root).real
    elif m == 4:
        quarter = y**0.25
        ratio = _quartic_ratio(math.sqrt(2.0) * math.pi * quarter)
        value = -0.5 / y + math.sqrt(2.0) * math.pi / (4.0 * quarter**3) * ratio
    else:
        raise DomainError(f"trigonometric form only for m in (2, 4), got {m}")
    return SeriesSum(m, 0j, complex(y), complex(value), SeriesMethod.TRIG_FORM, abs(value) * 1e-15)


def bilateral_sum(m: int, y: complex, cfg: EvalConfig = SERIES_CONFIG) -> complex:
    """Σ_{k∈ℤ} 1/(k^m + y) for even m, as 1/y + 2 Σ_{k>=1}."""
    if m % 2:
        raise DomainError(f"the bilateral sum needs even m, got {m}")
    y = complex(y)
    if y == 0:
        raise DomainError("the k = 0 term 1/y is undefined at y = 0")
    return 1.0 / y + 2.0 * sum_direct(m, 0, y, cfg).value


# ---------------------------------------------------------------------------
# Identity residuals
# ---------------------------------------------------------------------------


def coth_identity_residual(y: float, cfg: EvalConfig = SERIES_CONFIG) -> float:
    """|(1/2π) Σ_{k∈ℤ} 2y/(k²+y²) - coth(πy)|."""
    if y == 0:
        raise DomainError("y must be nonzero")
    lhs = 2.0 * y * bilateral_sum(2, y * y, cfg) / (2.0 * math.pi)
    return abs(lhs - coth_safe(math.pi * y))


def quartic_identity_residual(
    y: float,
    cfg: EvalConfig = SERIES_CONFIG,
    convention: SignConvention = SignConvention.VALIDATED,
) -> float:
    """|(1/(π√2)) Σ_{k∈ℤ} c y³/(k⁴+y⁴) - (sinh+sin)/(cosh-cos)(√2πy)|.

    c = 2 reproduces the large-y limit; PRINTED uses c = 4.
    """
    if y == 0:
        raise DomainError("y must be nonzero")
    c = 2.0 if convention is SignConvention.VALIDATED else 4.0
    lhs = c * y**3 * bilateral_sum(4, y**4, cfg) / (math.pi * math.sqrt(2.0))
    return abs(lhs - _quartic_ratio(math.sqrt(2.0) * math.pi * y))


def _cot_rotations(n: int, convention: SignConvention) -> list[complex]:
    if convention is SignConvention.VALIDATED:
        return [cmath.exp(1j * math.pi * (2 * j + 1) / (2 * n)) for j in range(n)]
    return [cmath.exp(1j * math.pi * j / n) for j in range(n)]


def _cot_side(n: int, y: complex, convention: SignConvention) -> complex:
    """Σ_l e^{iθ_l} cot(π e^{iθ_l} y)."""
    total = 0j
    for rotation in _cot_rotations(n, convention):
        z = math.pi * rotation * y
        if abs(z.imag) < 20.0 and abs(cmath.sin(z)) < POLE_GUARD:
            raise DomainError(f"cot argument {z} is within {POLE_GUARD:g} of a pole")
        total += rotation * cot_safe(z)
    return total


def cot_sum_identity_residual(
    n: int,
    y: float,
    cfg: EvalConfig = SERIES_CONFIG,
    convention: SignConvention = SignConvention.VALIDATED,
) -> float:
    """|(n/π) Σ_{k∈ℤ} y^{2n-1}/(k^{2n}+y^{2n}) - Σ_l e^{iθ_l} cot(π e^{iθ_l} y)|.

    θ_l = π(2l+1)/(2n) are the half-plane roots of -1 of order 2n;
    PRINTED uses θ_l = πl/n.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if y == 0:
        raise DomainError("y must be nonzero")
    rhs = _cot_side(n, y, convention)
    lhs = n / math.pi * y ** (2 * n - 1) * bilateral_sum(2 * n, y ** (2 * n), cfg)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Euler's even zeta values
# ---------------------------------------------------------------------------


def euler_even_zeta(j: int) -> complex:
    """ζ(2j) = (-1)^{j+1} 2^{2j-1} π^{2j} B_{2j} / (2j)!."""
    rational = (-1) ** (j + 1) * Fraction(2 ** (2 * j - 1)) * bernoulli_even(j) / math.factorial(2 * j)
    return complex(float(rational) * math.pi ** (2 * j))


def hurwitz_via_polygamma(
    m: int,
    x: complex,
    convention: SignConvention = SignConvention.VALIDATED,
) -> complex:
    """ζ_H(m, x) = (-1)^m ψ^{(m-1)}(x) / (m-1)!; PRINTED uses (-1)^{m-1}."""
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    sign = (-1) ** m if convention is SignConvention.VALIDATED else (-1) ** (m - 1)
    return sign * polygamma(m - 1, x) / math.factorial(m - 1)


def taylor_coefficients(f, radius: float = TAYLOR_RADIUS, count: int = 8, points: int = TAYLOR_POINTS) -> np.ndarray:
    """First ``count`` Taylor coefficients of f at 0 from samples on |z| = radius."""
    if count > points:
        raise DomainError(f"count {count} exceeds the {points} sample points")
    z = radius * np.exp(2j * np.pi * np.arange(points) / points)
    samples = np.array([f(complex(w)) for w in z], dtype=complex)
    coeffs = np.fft.fft(samples) / points
    return coeffs[:count] / radius ** np.arange(count)


def euler_zeta_from_coth(j_max: int) -> list[complex]:
    """ζ(2), ..., ζ(2 j_max) from the Taylor series of Σ_{k>=1} 1/(k²+y) at y = 0.

    Σ_{k>=1} 1/(k²+y) = -1/(2y) + π/(2√y) coth(π√y) = Σ_j (-1)^j ζ(2j+2) y^j.
    """

    def g(y: complex) -> complex:
        root = cmath.sqrt(y)
        return -0.5 / y + math.pi / (2.0 * root) * coth_safe(math.pi * root)

    coeffs = taylor_coefficients(g, count=j_max)
    return [complex((-1) ** (j - 1) * coeffs[j - 1]) for j in range(1, j_max + 1)]


def zeta_from_cot_sum(n: int, convention: SignConvention = SignConvention.VALIDATED) -> complex:
    """ζ(2n) from the y^{2n-1} coefficient of (π/n) Σ_l e^{iθ_l} cot(π e^{iθ_l} y) - 1/y."""

    def h(y: complex) -> complex:
        return math.pi / n * _cot_side(n, y, convention) - 1.0 / y

    coeffs = taylor_coefficients(h, count=2 * n)
    return complex(coeffs[2 * n - 1] / 2.0)


def log_regprod_derivative(
    m: int,
    y: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
    step: float = DERIVATIVE_STEP,
) -> complex:
    """d/dy log ⧉∏_{k>=1} (k^m + y) by a fourth-order central difference."""
    if not y - 2 * step > 0:
        raise DomainError(f"y must exceed 2*step, got y={y}")

    def log_product(v: float) -> complex:
        product = regprod_power_form(0, v ** (1.0 / m), m, -1, start_index=1, cfg=cfg)
        return cmath.log(product.value)

    samples = [log_product(y + k * step) for k in (-2, -1, 1, 2)]
    derivative = (samples[0] - 8 * samples[1] + 8 * samples[2] - samples[3]) / (12 * step)
    LOGGER.debug("log-product derivative m=%d y=%g: %s", m, y, derivative)
    return derivative

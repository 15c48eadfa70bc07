"""Complex Gamma family, Bernoulli numbers and overflow-safe trigonometry.

log Γ, ψ and ψ⁽ⁿ⁾ are evaluated by raising the argument with the recurrence
Γ(z+1) = zΓ(z) until Re ≥ a fixed radius, then summing the Stirling-type
asymptotic series whose coefficients come from the exact Bernoulli table.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import CapacityError, ClampOverflowError, DomainError, PoleError
from .quadrature import quad_real

LOGGER = logging.getLogger(__name__)

BERNOULLI_JMAX = 64
POLYGAMMA_MAX_ORDER = 12
STIRLING_RADIUS = 10.0
STIRLING_TERMS = 12


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = 0.57721566490153286
    pi: float = math.pi
    sqrt_two_pi: float = math.sqrt(2.0 * math.pi)


CONSTANTS = Constants()


@dataclass(frozen=True)
class BernoulliTable:
    values: tuple[Fraction, ...]  # B_0 .. B_{2*j_max}, with B_1 = -1/2
    j_max: int = BERNOULLI_JMAX

    def even(self, j: int) -> Fraction:
        return self.values[2 * j]


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n as exact Fractions from the binomial recurrence.

    Convention B_1 = -1/2, i.e. sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    values = [Fraction(1)]
    for m in range(1, n + 1):
        total = sum(comb(m + 1, j) * values[j] for j in range(m))
        values.append(-total / (m + 1))
    return tuple(values)


@lru_cache(maxsize=1)
def bernoulli_table() -> BernoulliTable:
    return BernoulliTable(values=bernoulli_numbers(2 * BERNOULLI_JMAX))


def bernoulli_even(j: int) -> Fraction:
    """Return B_{2j} for 1 <= j <= BERNOULLI_JMAX (B_2 = 1/6)."""
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if j > BERNOULLI_JMAX:
        raise CapacityError(f"B_{2 * j} exceeds the Bernoulli table (j_max={BERNOULLI_JMAX})")
    return bernoulli_table().even(j)


# B_{2j} / (2j (2j-1)), the Stirling coefficients of log Γ
_STIRLING = tuple(
    float(bernoulli_even(j) / (2 * j * (2 * j - 1))) for j in range(1, STIRLING_TERMS + 1)
)
# B_{2j} / (2j), the asymptotic coefficients of ψ
_DIGAMMA = tuple(float(bernoulli_even(j) / (2 * j)) for j in range(1, STIRLING_TERMS + 1))


def nonpositive_integer(z: complex, tol: float = 0.0) -> int | None:
    """Returns the integer n <= 0 within ``tol`` of z, or None."""
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return None
    nearest = round(z.real)
    if abs(z.real - nearest) <= tol:
        return int(nearest)
    return None


def check_finite(value: complex, what: str) -> complex:
    if not cmath.isfinite(value):
        raise ClampOverflowError(f"{what} is not finite ({value})")
    return value


def _require_not_pole(z: complex, name: str) -> None:
    pole = nonpositive_integer(z)
    if pole is not None:
        raise PoleError(f"{name} has a pole at z={pole}", pole)


def _stirling(w: complex) -> complex:
    w_inv = 1.0 / w
    w_inv2 = w_inv * w_inv
    series = 0j
    power = w_inv
    for coeff in _STIRLING:
        series += coeff * power
        power *= w_inv2
    return (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2.0 * math.pi) + series


def log_gamma(z: complex) -> complex:
    """Principal log Γ(z) on Re(z) > 0, extended left by the recurrence."""
    z = complex(z)
    _require_not_pole(z, "log_gamma")
    shift = 0j
    w = z
    while w.real < STIRLING_RADIUS:
        shift += cmath.log(w)
        w += 1.0
    return _stirling(w) - shift


def gamma(z: complex, clamp: float = DEFAULT_CONFIG.overflow_clamp) -> complex:
    """Γ(z) = exp(log Γ(z)); real-valued on the real axis."""
    z = complex(z)
    lg = log_gamma(z)
    if lg.real > clamp:
        raise ClampOverflowError(f"Gamma({z}) overflows (log magnitude {lg.real:.1f})")
    value = cmath.exp(lg)
    if z.imag == 0.0:
        value = complex(value.real, 0.0)
    return value


def digamma(z: complex) -> complex:
    """ψ(z) = d/dz log Γ(z)."""
    z = complex(z)
    _require_not_pole(z, "digamma")
    shift = 0j
    w = z
    while w.real < STIRLING_RADIUS:
        shift += 1.0 / w
        w += 1.0
    w_inv = 1.0 / w
    w_inv2 = w_inv * w_inv
    series = 0j
    power = w_inv2
    for coeff in _DIGAMMA:
        series += coeff * power
        power *= w_inv2
    return cmath.log(w) - 0.5 * w_inv - series - shift


@lru_cache(maxsize=None)
def _polygamma_coeffs(n: int) -> tuple[float, ...]:
    # B_{2j} (2j+n-1)! / (2j)!
    return tuple(
        float(bernoulli_even(j) * Fraction(math.factorial(2 * j + n - 1), math.factorial(2 * j)))
        for j in range(1, STIRLING_TERMS + 1)
    )


def polygamma(n: int, z: complex) -> complex:
    """ψ⁽ⁿ⁾(z), the n-th derivative of the digamma function, 1 <= n <= 12."""
    if not 1 <= n <= POLYGAMMA_MAX_ORDER:
        raise CapacityError(f"polygamma order must be in [1, {POLYGAMMA_MAX_ORDER}], got {n}")
    z = complex(z)
    _require_not_pole(z, "polygamma")
    radius = STIRLING_RADIUS + n
    shift = 0j
    w = z
    while w.real < radius:
        shift += w ** -(n + 1)
        w += 1.0
    w_inv = 1.0 / w
    w_inv2 = w_inv * w_inv
    series = math.factorial(n - 1) * w_inv**n + math.factorial(n) * 0.5 * w_inv ** (n + 1)
    power = w_inv ** (n + 2)
    for coeff in _polygamma_coeffs(n):
        series += coeff * power
        power *= w_inv2
    sign = 1.0 if n % 2 else -1.0  # (-1)^(n+1)
    return sign * (series + math.factorial(n) * shift)


def gamma_integral_oracle(z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Γ(z) as ∫₀^∞ t^{z-1} e^{-t} dt by adaptive quadrature.

    With t = e^u the integrand becomes e^{zu - e^u}. The half u >= 0 decays
    double exponentially and is integrated on a finite interval; the half
    u < 0 is reflected to v = -u and integrated with Fourier weights when
    Im(z) != 0.
    """
    z = complex(z)
    a, b = z.real, z.imag
    if a <= 0:
        raise DomainError(f"gamma_integral_oracle needs Re(z) > 0, got {z}")
    tol = cfg.quad_tol

    upper = 2.0 + math.log(a + 40.0)

    def right_re(u):
        return math.exp(a * u - math.exp(u)) * math.cos(b * u)

    def right_im(u):
        return math.exp(a * u - math.exp(u)) * math.sin(b * u)

    def left(v):
        return math.exp(-a * v - math.exp(-v))

    re, re_err = quad_real(right_re, 0.0, upper, tol)
    im, im_err = quad_real(right_im, 0.0, upper, tol) if b else (0.0, 0.0)
    if b:
        left_re, lre_err = quad_real(left, 0.0, math.inf, tol, weight="cos", wvar=abs(b))
        left_im, lim_err = quad_real(left, 0.0, math.inf, tol, weight="sin", wvar=abs(b))
        left_im = -math.copysign(left_im, b)
    else:
        left_re, lre_err = quad_real(left, 0.0, math.inf, tol)
        left_im, lim_err = 0.0, 0.0
    LOGGER.debug(
        "gamma oracle at %s: error estimate %.3g", z, re_err + im_err + lre_err + lim_err
    )
    return complex(re + left_re, im + left_im)


def sinh_safe(z: complex, clamp: float = DEFAULT_CONFIG.overflow_clamp) -> complex:
    z = complex(z)
    if abs(z.real) > clamp:
        raise ClampOverflowError(f"sinh argument {z} beyond clamp {clamp}")
    return cmath.sinh(z)


def cosh_safe(z: complex, clamp: float = DEFAULT_CONFIG.overflow_clamp) -> complex:
    z = complex(z)
    if abs(z.real) > clamp:
        raise ClampOverflowError(f"cosh argument {z} beyond clamp {clamp}")
    return cmath.cosh(z)


def coth_safe(z: complex) -> complex:
    """coth(z) without overflow for large |Re z|."""
    z = complex(z)
    if abs(z.real) < 20.0:
        denominator = cmath.sinh(z)
        if denominator == 0:
            raise PoleError(f"coth has a pole at {z}", z)
        return cmath.cosh(z) / denominator
    w = z if z.real > 0 else -z
    q = cmath.exp(-2.0 * w)
    value = (1.0 + q) / (1.0 - q)
    return value if z.real > 0 else -value


def cot_safe(z: complex) -> complex:
    """cot(z) without overflow for large |Im z|."""
    z = complex(z)
    if abs(z.imag) < 20.0:
        denominator = cmath.sin(z)
        if denominator == 0:
            raise PoleError(f"cot has a pole at {z}", z)
        return cmath.cos(z) / denominator
    if z.imag > 0:
        q = cmath.exp(2j * z)
        return -1j * (1.0 + q) / (1.0 - q)
    q = cmath.exp(-2j * z)
    return 1j * (1.0 + q) / (1.0 - q)

"""Hurwitz zeta with Euler-Maclaurin continuation and the Lerch function L.

L(x) is the regularized product of n + x over n >= 0:

    L(x) = exp(-∂ζ_H/∂s(0, x)) = √(2π) / Γ(x)

continued to the whole plane by L(x) = L(x + n_x) ∏_{n<n_x} (n + x) with
n_x = ⌊-Re x⌋ + 1.
"""

import cmath
import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CONFIG, MIN_TRUNC, EvalConfig, SignConvention
from .errors import CapacityError, ClampOverflowError, ConvergenceError, DomainError, PoleError
from .quadrature import quad_real
from .special_functions import (
    BERNOULLI_JMAX,
    bernoulli_even,
    check_finite,
    log_gamma,
    nonpositive_integer,
)

LOGGER = logging.getLogger(__name__)

MAX_REFINEMENTS = 4
TAIL_SERIES_TERMS = 200


@dataclass(frozen=True)
class HurwitzEval:
    s: complex
    a: complex  # shift, Re(a) > 0
    value: complex
    em_order: int
    trunc: int


@dataclass(frozen=True)
class LerchValue:
    x: complex
    value: complex
    shift_count: int  # n_x, zero when Re(x) > 0


@lru_cache(maxsize=None)
def _em_coeff(j: int) -> float:
    # B_{2j} / (2j)!
    return float(bernoulli_even(j) / Fraction(math.factorial(2 * j)))


@lru_cache(maxsize=None)
def _stirling_coeff(j: int) -> float:
    # B_{2j} / (2j (2j-1))
    return float(bernoulli_even(j) / (2 * j * (2 * j - 1)))


def _check_shift(a: complex) -> None:
    pole = nonpositive_integer(a)
    if pole is not None:
        raise PoleError(f"Hurwitz shift a={pole} is a pole of the continuation", pole)
    if a.real <= 0:
        raise DomainError(
            f"Hurwitz zeta needs Re(a) > 0, got a={a}; "
            "pre-shift with ζ(s,a) = ζ(s,a+n) + Σ_{k<n} (k+a)^-s"
        )


def _euler_maclaurin(s: complex, a: complex, n: int, order: int) -> tuple[complex, float, float]:
    """Returns (value, first omitted correction, scale) for N = n, J = order."""
    if n:
        k = np.arange(n, dtype=complex)
        partial = complex(np.sum(np.exp(-s * np.log(k + a))))
    else:
        partial = 0j
    radius = a + n
    log_r = cmath.log(radius)
    r_pow = cmath.exp(-s * log_r)  # R^{-s}
    integral = radius * r_pow / (s - 1.0)
    value = partial + integral + 0.5 * r_pow

    # B_{2j}/(2j)! (s)_{2j-1} R^{-s-2j+1}
    pochhammer = s
    power = r_pow / radius
    inv_r2 = 1.0 / (radius * radius)
    omitted = 0.0
    for j in range(1, order + 2):
        term = _em_coeff(j) * pochhammer * power
        if j > order:
            omitted = abs(term)
            break
        value += term
        pochhammer *= (s + 2 * j - 1) * (s + 2 * j)
        power *= inv_r2
    scale = max(abs(value), abs(integral), abs(r_pow), abs(partial))
    return value, omitted, scale


def _bernoulli_polynomial_value(n: int, a: complex) -> complex:
    """ζ_H(-n, a) = -B_{n+1}(a)/(n+1), via the exact N = 0 Euler-Maclaurin form."""
    order = n // 2 + 1
    if order > BERNOULLI_JMAX:
        raise CapacityError(f"ζ_H(-{n}, a) needs B_{2 * order}, beyond the Bernoulli table")
    value, _, _ = _euler_maclaurin(complex(-n), a, 0, order)
    return value


def hurwitz_eval(s: complex, a: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> HurwitzEval:
    """Evaluate ζ_H(s, a) and record the truncation actually used."""
    s, a = complex(s), complex(a)
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s=1", 1)
    _check_shift(a)

    negative_integer = nonpositive_integer(s)
    if negative_integer is not None:
        n = -negative_integer
        return HurwitzEval(s, a, _bernoulli_polynomial_value(n, a), n // 2 + 1, 0)

    if s.real >= 0:
        n = cfg.trunc
    else:
        # keep the partial sum short: cancellation grows like R^(1-Re s)
        n = max(0, math.ceil(8.0 + abs(s) / math.pi - a.real))

    for _ in range(MAX_REFINEMENTS + 1):
        value, omitted, scale = _euler_maclaurin(s, a, n, cfg.em_order)
        if omitted <= 1e-15 * scale:
            return HurwitzEval(s, a, check_finite(value, "ζ_H"), cfg.em_order, n)
        LOGGER.debug("ζ_H(%s, %s): omitted term %.3g at N=%d, refining", s, a, omitted, n)
        n = 2 * n if n else cfg.trunc
    raise ConvergenceError(
        f"Euler-Maclaurin for ζ_H({s}, {a}) did not converge (last omitted term {omitted:.3g})"
    )


def hurwitz_zeta(s: complex, a: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """ζ_H(s, a) = Σ_{k>=0} (k+a)^{-s}, continued to s != 1 for Re(a) > 0."""
    return hurwitz_eval(s, a, cfg).value


def hurwitz_zeta_ds0(a: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """∂ζ_H/∂s at s = 0, differentiating the Euler-Maclaurin formula term by term.

    With R = a + N:

        -Σ_{k<N} log(k+a) + R log R - R - ½ log R + Σ_j B_{2j} / (2j(2j-1) R^{2j-1})
    """
    a = complex(a)
    _check_shift(a)
    n = cfg.trunc
    radius = a + n
    log_sum = complex(np.sum(np.log(np.arange(n, dtype=complex) + a)))
    log_r = cmath.log(radius)
    tail = 0j
    inv_r = 1.0 / radius
    power = inv_r
    for j in range(1, cfg.em_order + 1):
        tail += _stirling_coeff(j) * power
        power *= inv_r * inv_r
    return -log_sum + radius * log_r - radius - 0.5 * log_r + tail


def lerch_L(x: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> LerchValue:
    """L(x) on all of ℂ; exact zeros at x = 0, -1, -2, ..."""
    x = complex(x)
    pole = nonpositive_integer(x)
    if pole is not None:
        return LerchValue(x, 0j, -pole + 1)
    if x.real > 0:
        exponent = -hurwitz_zeta_ds0(x, cfg)
        if exponent.real > cfg.overflow_clamp:
            raise ClampOverflowError(f"L({x}) overflows")
        return LerchValue(x, cmath.exp(exponent), 0)

    shift_count = math.floor(-x.real) + 1
    value = lerch_L(x + shift_count, cfg).value
    for n in range(shift_count):
        value *= n + x
    return LerchValue(x, check_finite(value, f"L({x})"), shift_count)


def lerch_pair_product(x: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """L(x)·L(-x), the regularized product of n² - x² over n >= 0."""
    return lerch_L(x, cfg).value * lerch_L(-complex(x), cfg).value


def lerch_reflection(x: complex, convention: SignConvention = SignConvention.VALIDATED) -> complex:
    """Closed form of L(x)L(-x): -2x sin(πx), or +2x sin(πx) under PRINTED."""
    x = complex(x)
    sign = -1.0 if convention is SignConvention.VALIDATED else 1.0
    return sign * 2.0 * x * cmath.sin(math.pi * x)


def log_gamma_integral(cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """∫₀¹ log Γ(x) dx, expected to equal ½ log(2π).

    Integrated as ∫₀¹ log Γ(1+x) dx - ∫₀¹ log x dx to keep the integrand smooth.
    """
    value, _ = quad_real(lambda u: log_gamma(1.0 + u).real, 0.0, 1.0, cfg.quad_tol)
    return value + 1.0


def generalized_hurwitz_sum(
    m: int,
    x: complex,
    y: complex,
    s: complex,
    cfg: EvalConfig,
) -> tuple[complex, float]:
    """Σ_{k>=1} ((k+x)^m + y)^{-s} by direct summation plus a Hurwitz tail.

    The terms k > N are expanded binomially in y/(k+x)^m:

        Σ_r C(-s, r) y^r ζ_H(m(s+r), N+1+x)

    Returns (value, tail_bound) where tail_bound is the size of the last
    retained tail term.
    """
    x, y, s = complex(x), complex(y), complex(s)
    if x.real <= -1:
        raise DomainError(f"x must satisfy Re(x) > -1, got {x}")
    n = cfg.trunc
    k = np.arange(1, n + 1, dtype=complex)
    base = (k + x) ** m + y
    if np.min(np.abs(base)) < 1e-300:
        raise DomainError(f"(k+x)^{m} + y vanishes for some k <= {n} (x={x}, y={y})")
    if s == 1:
        partial = complex(np.sum(1.0 / base))
    else:
        partial = complex(np.sum(np.exp(-s * np.log(base))))

    start = n + 1 + x
    if abs(y) >= 0.5 * abs(start) ** m:
        raise DomainError(f"|y|={abs(y):.3g} too large for truncation N={n}; raise trunc")

    tail_cfg = replace(cfg, trunc=MIN_TRUNC)
    tail = 0j
    coeff = 1.0 + 0j  # C(-s, r)
    last = 0.0
    for r in range(TAIL_SERIES_TERMS):
        term = coeff * y**r * hurwitz_zeta(m * (s + r), start, tail_cfg)
        tail += term
        last = abs(term)
        if term == 0 or last <= 1e-17 * abs(tail):
            break
        coeff *= (-s - r) / (r + 1)
    else:
        raise ConvergenceError(f"binomial tail for y={y} did not settle in {TAIL_SERIES_TERMS} terms")
    return check_finite(partial + tail, "series value"), last

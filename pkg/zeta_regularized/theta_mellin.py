"""Theta series θ_m(t, x; y) = Σ_{k>=1} exp(-((k+x)^m + y) t) and their Mellin transforms.

The zeta function ζ_m(s, x; y) = Σ ((k+x)^m + y)^{-s} is continued through

    Γ(s) ζ_m(s) = ∫₀^∞ t^{s-1} θ_m(t) dt

by replacing θ with its small-t expansion S on (0, t_c), where S integrates
exactly to Σ coeff t_c^{s+p}/(s+p), and integrating θ itself by adaptive
quadrature above t_c. t_c is small enough that θ - S is below roundoff
there. This gives ζ'(0), and so the regularized product, without any
Gamma-function closed form.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
import numpy as np

from .config import DEFAULT_CONFIG, SERIES_CONFIG, EvalConfig, SignConvention
from .errors import CapacityError, ClampOverflowError, DomainError, PoleError
from .hurwitz_lerch import generalized_hurwitz_sum, hurwitz_zeta
from .quadrature import quad_complex, quad_real
from .special_functions import BERNOULLI_JMAX, CONSTANTS, check_finite, gamma, nonpositive_integer

LOGGER = logging.getLogger(__name__)

MAX_EXPANSION_ORDER = 20
SPLIT_POINT = 0.05  # t_c for m <= 2, (1+x)^m <= 1 and |y| <= 1; scaled down otherwise
POISSON_SPLIT = 0.2  # t_c <= POISSON_SPLIT^(m-1)/m keeps the dual terms below e^-35
ORDER_WINDOW = 3
TRUNCATION_TOL = 1e-15
THETA_CUTOFF = 45.0  # exponent gap at which direct summation stops
MELLIN_RELATIVE_ERROR = 1e-7
RESIDUE_OFFSET = 1e-4
SLOPE_DPS = 50
RESOLUTION_MARGIN = 10  # digits of θ an expansion error must clear

# ζ_H(-n, a) uses B_{n+1}; the table stops at B_{2·BERNOULLI_JMAX}
_MAX_NEGATIVE_ORDER = 2 * BERNOULLI_JMAX - 1


@dataclass(frozen=True)
class ThetaSeries:
    """θ_m(t, x; y) for integer m >= 1, real x >= 0."""

    m: int
    x: float
    y: complex = 0j

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        x = complex(self.x)
        if x.imag != 0 or x.real < 0:
            raise DomainError(f"x must be real and >= 0, got {self.x}")
        object.__setattr__(self, "x", x.real)
        object.__setattr__(self, "y", complex(self.y))
        if not self.decay_rate > 0:
            raise DomainError(
                f"(1+x)^m + Re(y) must be > 0 for the series to decay, got {self.decay_rate}"
            )

    @property
    def decay_rate(self) -> float:
        """κ, with |θ(t)| <= C e^{-κt} for t >= 1."""
        return (1.0 + self.x) ** self.m + self.y.real

    @property
    def index(self) -> Fraction:
        return Fraction(-1, self.m)

    @property
    def decay_constant(self) -> float:
        """C = e^κ θ(1, x; Re y)."""
        real_part = ThetaSeries(self.m, self.x, self.y.real)
        return math.exp(self.decay_rate) * theta_eval(real_part, 1.0).real

    @property
    def split_point(self) -> float:
        base = min(SPLIT_POINT, POISSON_SPLIT ** (self.m - 1) / self.m)
        return base / max(1.0, (1.0 + self.x) ** self.m, abs(self.y))


@dataclass(frozen=True)
class AsymptoticExpansion:
    """θ(t) ~ Σ_j a_j t^{j-1/m} + Σ_k c_k t^k as t → 0⁺."""

    m: int
    leading_coeff: complex
    singular_coeffs: tuple[complex, ...]  # a_j, a_0 = leading_coeff
    coeffs: tuple[complex, ...]  # c_k(x; y), k = 0..order
    order: int

    def terms(self) -> list[tuple[Fraction, complex]]:
        """(exponent, coefficient) pairs with equal exponents merged, ascending."""
        merged: dict[Fraction, complex] = {}
        for j, a in enumerate(self.singular_coeffs):
            p = j - Fraction(1, self.m)
            merged[p] = merged.get(p, 0j) + a
        for k, c in enumerate(self.coeffs):
            merged[Fraction(k)] = merged.get(Fraction(k), 0j) + c
        return sorted(merged.items())


def theta_eval(ts: ThetaSeries, t: float) -> complex:
    """θ_m(t, x; y) by direct summation; closed geometric form for m = 1."""
    t = float(t)
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    m, x = ts.m, ts.x
    if m == 1:
        base = math.exp(-(1.0 + x) * t) / -math.expm1(-t)
    else:
        # terms beyond k_max are below e^{-THETA_CUTOFF} of the first one
        k_max = math.ceil(((1.0 + x) ** m + THETA_CUTOFF / t) ** (1.0 / m) - x)
        k = np.arange(1, max(k_max, 1) + 1, dtype=float)
        base = float(np.sum(np.exp(-((k + x) ** m) * t)))
    return base * cmath.exp(-ts.y * t)


@lru_cache(maxsize=256)
def theta_asymptotic(
    ts: ThetaSeries,
    order: int,
    convention: SignConvention = SignConvention.VALIDATED,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> AsymptoticExpansion:
    """Small-t expansion of θ through t^order.

    c_k(x; 0) = (-1)^k ζ_H(-mk, x+1) / k!, and the e^{-yt} factor enters by
    Cauchy product. The leading coefficient is Γ(1 + 1/m), the residue of
    Γ(s) ζ_H(ms, x+1) at s = 1/m; PRINTED uses its reciprocal.
    """
    if not 0 <= order <= MAX_EXPANSION_ORDER:
        raise CapacityError(f"expansion order must be in [0, {MAX_EXPANSION_ORDER}], got {order}")
    m, x, y = ts.m, ts.x, ts.y
    if m * order > _MAX_NEGATIVE_ORDER:
        raise CapacityError(f"c_{order} needs ζ_H(-{m * order}, ·), beyond the Bernoulli table")
    leading = gamma(1.0 + 1.0 / m).real
    if convention is SignConvention.PRINTED:
        leading = 1.0 / leading
    e_series = [(-y) ** j / factorial(j) for j in range(order + 2)]
    singular = tuple(leading * e for e in e_series)
    base = [(-1) ** k * hurwitz_zeta(-m * k, x + 1.0, cfg) / factorial(k) for k in range(order + 1)]
    coeffs = tuple(
        sum(base[i] * e_series[k - i] for i in range(k + 1)) for k in range(order + 1)
    )
    return AsymptoticExpansion(m, complex(leading), singular, coeffs, order)


def _choose_expansion(
    ts: ThetaSeries, s_real: float, cfg: EvalConfig, convention: SignConvention
) -> AsymptoticExpansion:
    """Lowest order whose next ORDER_WINDOW terms at t_c are negligible.

    The order must also exceed -Re s - 1 so that t^{s-1}(θ - S) is integrable
    at 0. The series is asymptotic only, so orders are compared on full
    windows; the last ORDER_WINDOW computed terms are never treated as a tail.
    """
    m = ts.m
    cap = min(MAX_EXPANSION_ORDER, _MAX_NEGATIVE_ORDER // m)
    lowest = max(0, math.floor(-s_real) + 1)
    if lowest + ORDER_WINDOW > cap:
        raise CapacityError(f"Re s = {s_real} needs expansion order above {cap - ORDER_WINDOW}")
    full = theta_asymptotic(ts, cap, convention, cfg)
    t_c = ts.split_point
    weight = t_c ** min(0.0, s_real)
    sizes = [
        weight * (abs(c) + abs(full.singular_coeffs[k + 1])) * t_c**k
        for k, c in enumerate(full.coeffs)
    ]
    target = TRUNCATION_TOL * max(1.0, sizes[0])
    best, best_bound = lowest, math.inf
    for order in range(lowest, cap - ORDER_WINDOW + 1):
        bound = max(sizes[order + 1 : order + 1 + ORDER_WINDOW])
        if bound < best_bound:
            best, best_bound = order, bound
        if bound <= target:
            break
    else:
        LOGGER.warning(
            "expansion for %s reaches only %.3g at t_c=%.3g (order %d)", ts, best_bound, t_c, best
        )
    LOGGER.debug("expansion for %s: order %d, t_c=%.3g, next terms %.3g", ts, best, t_c, best_bound)
    return theta_asymptotic(ts, best, convention, cfg)


def _upper_limit(ts: ThetaSeries, s: complex, tol: float) -> float:
    kappa = ts.decay_rate
    upper = max(2.0, -math.log(tol) / kappa)
    bound = ts.decay_constant
    while upper ** (s.real - 1.0) * math.exp(-kappa * upper) * bound >= tol:
        upper *= 1.5
    return upper


def _expansion_integral(ts: ThetaSeries, s: complex, expansion: AsymptoticExpansion) -> complex:
    """∫₀^{t_c} t^{s-1} S(t) dt = Σ coeff t_c^{s+p} / (s+p), continued in s."""
    log_t_c = math.log(ts.split_point)
    total = 0j
    for p, coeff in expansion.terms():
        if coeff == 0:
            continue
        exponent = s + float(p)
        if abs(exponent) < 1e-14:
            raise PoleError(f"ζ_{ts.m} has a pole at s={-p}", -float(p))
        total += coeff * cmath.exp(exponent * log_t_c) / exponent
    return total


def _theta_integral(ts: ThetaSeries, s: complex, cfg: EvalConfig) -> complex:
    """∫_{t_c}^T t^{s-1} θ(t) dt, with t = e^u on [t_c, 1]."""
    lower = math.log(ts.split_point)
    upper = _upper_limit(ts, s, cfg.quad_tol)

    def near(u):
        t = math.exp(u)
        return cmath.exp(s * u) * theta_eval(ts, t)

    def far(t):
        return t ** (s - 1.0) * theta_eval(ts, t)

    if s.imag == 0 and ts.y.imag == 0:
        inner, _ = quad_real(lambda u: near(u).real, lower, 0.0, cfg.quad_tol)
        outer, _ = quad_real(lambda t: far(t).real, 1.0, upper, cfg.quad_tol)
        return complex(inner + outer)
    inner, _ = quad_complex(near, lower, 0.0, cfg.quad_tol)
    outer, _ = quad_complex(far, 1.0, upper, cfg.quad_tol)
    return inner + outer


def mellin_zeta(
    ts: ThetaSeries,
    s: complex,
    cfg: EvalConfig = DEFAULT_CONFIG,
    convention: SignConvention = SignConvention.VALIDATED,
) -> complex:
    """ζ_m(s, x; y) continued to all s except its poles."""
    s = complex(s)
    m = ts.m
    if s == 1.0 / m:
        raise PoleError(f"ζ_{m} has its leading pole at s=1/{m}", 1.0 / m)

    negative = nonpositive_integer(s)
    if negative is not None:
        n = -negative
        if n > MAX_EXPANSION_ORDER:
            raise CapacityError(f"ζ_{m}(-{n}) needs expansion order {n} > {MAX_EXPANSION_ORDER}")
        coeff = dict(theta_asymptotic(ts, n, convention, cfg).terms()).get(Fraction(n), 0j)
        return (-1) ** n * factorial(n) * coeff

    expansion = _choose_expansion(ts, s.real, cfg, convention)
    total = _expansion_integral(ts, s, expansion) + _theta_integral(ts, s, cfg)
    return check_finite(total / gamma(s, cfg.overflow_clamp), f"ζ_{m}({s})")


def mellin_zeta_derivative_at_zero(
    ts: ThetaSeries,
    cfg: EvalConfig = DEFAULT_CONFIG,
    convention: SignConvention = SignConvention.VALIDATED,
) -> complex:
    """∂ζ_m/∂s at s = 0.

    With Γ(s)ζ(s) = c_0/s + G(s) and 1/Γ(s) = s + γs² + O(s³),
    ζ'(0) = G(0) + γ c_0. The c_0 t_c^s / s term contributes c_0 log t_c to G(0).
    """
    expansion = _choose_expansion(ts, 0.0, cfg, convention)
    t_c = ts.split_point
    c0 = 0j
    regular = 0j
    for p, coeff in expansion.terms():
        if p == 0:
            c0 = coeff
        else:
            regular += coeff * t_c ** float(p) / float(p)
    integral = _theta_integral(ts, 0j, cfg)
    return regular + c0 * math.log(t_c) + integral + CONSTANTS.euler_gamma * c0


def mellin_regprod_oracle(ts: ThetaSeries, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """⧉∏_{k>=1} ((k+x)^m + y) = exp(-ζ_m'(0))."""
    derivative = mellin_zeta_derivative_at_zero(ts, cfg)
    if -derivative.real > cfg.overflow_clamp:
        raise ClampOverflowError(f"regularized product for {ts} overflows")
    value = cmath.exp(-derivative)
    if ts.y.imag == 0:
        value = complex(value.real, 0.0)
    return value


def mellin_residue(
    ts: ThetaSeries,
    cfg: EvalConfig = DEFAULT_CONFIG,
    offset: float = RESIDUE_OFFSET,
    convention: SignConvention = SignConvention.VALIDATED,
) -> complex:
    """Residue of ζ_m at s = 1/m from the symmetric limit δ/2 (ζ(1/m+δ) - ζ(1/m-δ))."""
    pole = 1.0 / ts.m
    upper = mellin_zeta(ts, pole + offset, cfg, convention)
    lower = mellin_zeta(ts, pole - offset, cfg, convention)
    return 0.5 * offset * (upper - lower)


def zeta_direct(ts: ThetaSeries, s: complex, cfg: EvalConfig = SERIES_CONFIG) -> complex:
    """ζ_m(s, x; y) by direct summation with a Hurwitz tail; independent of θ."""
    value, _ = generalized_hurwitz_sum(ts.m, ts.x, ts.y, s, cfg)
    return value


def hurwitz_zeta_mellin(s: complex, a: float, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """ζ_H(s, a) through θ_1(t, a-1; 0) = e^{-at} / (1 - e^{-t})."""
    if complex(a).imag != 0 or complex(a).real < 1:
        raise DomainError(f"a must be real and >= 1, got {a}")
    return mellin_zeta(ThetaSeries(1, complex(a).real - 1.0), s, cfg)


def poisson_check_theta2(t: float, convention: SignConvention = SignConvention.VALIDATED) -> float:
    """|θ₂(t) - RHS| for the theta functional equation with x = y = 0.

    VALIDATED: θ₂(t) = √(π/t) θ₂(π²/t) + ½√(π/t) - ½
    PRINTED:   θ₂(t) = √(π/t) θ₂(1/t) - ½
    """
    t = float(t)
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    theta2 = ThetaSeries(2, 0.0)
    scale = math.sqrt(math.pi / t)
    lhs = theta_eval(theta2, t).real
    if convention is SignConvention.VALIDATED:
        rhs = scale * theta_eval(theta2, math.pi**2 / t).real + 0.5 * scale - 0.5
    else:
        rhs = scale * theta_eval(theta2, 1.0 / t).real - 0.5
    return abs(lhs - rhs)


def expansion_error(
    ts: ThetaSeries,
    order: int,
    t: float,
    convention: SignConvention = SignConvention.VALIDATED,
    dps: int = SLOPE_DPS,
) -> float:
    """|θ(t) - S(t)| for the order-`order` expansion S, computed at `dps` digits.

    In binary64 the difference drowns in the roundoff of θ ~ t^{-1/m} long
    before t^{order+1} gets small, so θ and every coefficient are rebuilt
    in mpmath.
    """
    if not 0 <= order <= MAX_EXPANSION_ORDER:
        raise CapacityError(f"expansion order must be in [0, {MAX_EXPANSION_ORDER}], got {order}")
    t = float(t)
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    m = ts.m
    with mpmath.workdps(dps):
        x = mpmath.mpf(ts.x)
        y = mpmath.mpc(ts.y.real, ts.y.imag)
        tt = mpmath.mpf(t)
        leading = mpmath.gamma(1 + mpmath.mpf(1) / m)
        if convention is SignConvention.PRINTED:
            leading = 1 / leading
        e_series = [(-y) ** j / mpmath.factorial(j) for j in range(order + 2)]
        base = [
            (-1) ** k * mpmath.zeta(-m * k, x + 1) / mpmath.factorial(k) for k in range(order + 1)
        ]
        series = mpmath.fsum(
            leading * e_series[j] * tt ** (j - mpmath.mpf(1) / m) for j in range(order + 2)
        ) + mpmath.fsum(
            mpmath.fsum(base[i] * e_series[k - i] for i in range(k + 1)) * tt**k
            for k in range(order + 1)
        )
        if m == 1:
            plain = mpmath.exp(-(1 + x) * tt) / -mpmath.expm1(-tt)
        else:
            gap = dps * math.log(10) + THETA_CUTOFF
            k_max = math.ceil(((1.0 + ts.x) ** m + gap / t) ** (1.0 / m) - ts.x)
            plain = mpmath.fsum(mpmath.exp(-((k + x) ** m) * tt) for k in range(1, k_max + 1))
        theta = plain * mpmath.exp(-y * tt)
        error = abs(theta - series)
        if error <= abs(theta) * mpmath.mpf(10) ** (RESOLUTION_MARGIN - dps):
            raise DomainError(
                f"θ - S at t={t} is below {dps}-digit resolution; the expansion looks exact"
            )
        return float(error)


def expansion_order_slope(
    ts: ThetaSeries,
    order: int,
    t_grid,
    convention: SignConvention = SignConvention.VALIDATED,
    dps: int = SLOPE_DPS,
) -> float:
    """Least-squares slope of log|θ - expansion| against log t."""
    t_grid = np.asarray(t_grid, dtype=float)
    errors = np.array([expansion_error(ts, order, t, convention, dps) for t in t_grid])
    slope, _ = np.polyfit(np.log(t_grid), np.log(errors), 1)
    return float(slope)

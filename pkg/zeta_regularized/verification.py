"""Identity suites: every identity evaluated two independent ways on a parameter grid."""

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .config import Settings
from .dirichlet_series import (
    cot_sum_identity_residual,
    coth_identity_residual,
    euler_even_zeta,
    euler_zeta_from_coth,
    hurwitz_via_polygamma,
    log_regprod_derivative,
    quartic_identity_residual,
    sum_digamma,
    sum_direct,
    sum_trig,
    zeta_from_cot_sum,
)
from .errors import ZetaRegError
from .hurwitz_lerch import (
    hurwitz_zeta,
    lerch_L,
    lerch_pair_product,
    lerch_reflection,
    log_gamma_integral,
)
from .regularized_products import (
    MonicPoly,
    closed_form_quadratic,
    closed_form_quartic,
    multiplicativity_ratio,
    power_form_polynomial,
    regprod_poly,
    regprod_power_form,
    regprod_power_form_oracle,
)
from .special_functions import CONSTANTS, gamma_integral_oracle
from .theta_mellin import (
    ThetaSeries,
    expansion_order_slope,
    mellin_residue,
    mellin_zeta,
    poisson_check_theta2,
    theta_asymptotic,
    zeta_direct,
)

LOGGER = logging.getLogger(__name__)

SUITES = ("lerch", "regprod", "series", "theta")
GRIDS = ("fast", "dense")
GRID_SEED = 20240614

Evaluator = Callable[[dict, Settings], tuple[complex, complex]]


@dataclass(frozen=True)
class Identity:
    identity_id: str
    method_pair: tuple[str, str]
    tolerance: float
    evaluate: Evaluator
    absolute: bool = False  # compare |lhs - rhs| <= tolerance only


@dataclass(frozen=True)
class VerificationReport:
    identity_id: str
    grid_point: dict
    lhs: complex | None
    rhs: complex | None
    abs_residual: float
    rel_residual: float
    tolerance: float
    passed: bool
    method_pair: tuple[str, str]
    error: str | None = None


def passes(abs_residual: float, rel_residual: float, rhs: complex, tolerance: float) -> bool:
    """rel <= tol, or abs <= tol when |rhs| < 1."""
    return rel_residual <= tolerance or (abs(rhs) < 1 and abs_residual <= tolerance)


def make_report(identity: Identity, point: dict, lhs: complex, rhs: complex) -> VerificationReport:
    lhs, rhs = complex(lhs), complex(rhs)
    abs_residual = abs(lhs - rhs)
    rel_residual = abs_residual / abs(rhs) if rhs != 0 else math.inf
    return VerificationReport(
        identity_id=identity.identity_id,
        grid_point=point,
        lhs=lhs,
        rhs=rhs,
        abs_residual=abs_residual,
        rel_residual=rel_residual,
        tolerance=identity.tolerance,
        passed=(
            abs_residual <= identity.tolerance
            if identity.absolute
            else passes(abs_residual, rel_residual, rhs, identity.tolerance)
        ),
        method_pair=identity.method_pair,
    )


# ---------------------------------------------------------------------------
# lerch
# ---------------------------------------------------------------------------


def _lerch_formula(p, st):
    x = p["x"]
    return lerch_L(x, st.config).value, CONSTANTS.sqrt_two_pi / gamma_integral_oracle(x, st.config)


def _lerch_one(p, st):
    return lerch_L(1, st.config).value, CONSTANTS.sqrt_two_pi


def _lerch_shift(p, st):
    x = p["x"]
    return lerch_L(x + 1, st.config).value * x, lerch_L(x, st.config).value


def _lerch_positivity(p, st):
    value = lerch_L(p["x"], st.config).value
    return value, abs(value)


def _lerch_reflection(p, st):
    return lerch_pair_product(p["x"], st.config), lerch_reflection(p["x"], st.convention)


def _log_gamma_integral(p, st):
    return log_gamma_integral(st.config), 0.5 * math.log(2 * math.pi)


LERCH_FORMULA = Identity("lerch_formula", ("hurwitz_ds0", "gamma_integral"), 1e-9, _lerch_formula)
LERCH_ONE = Identity("lerch_one", ("hurwitz_ds0", "sqrt_two_pi"), 1e-12, _lerch_one)
LERCH_SHIFT = Identity("lerch_shift", ("lerch_shifted", "lerch"), 1e-11, _lerch_shift)
LERCH_POSITIVITY = Identity("lerch_positivity", ("lerch", "abs_lerch"), 1e-14, _lerch_positivity)
LERCH_REFLECTION = Identity("lerch_reflection", ("lerch_pair", "sine_form"), 1e-9, _lerch_reflection)
LOG_GAMMA_INTEGRAL = Identity("log_gamma_integral", ("quadrature", "half_log_two_pi"), 1e-9, _log_gamma_integral)


def _random_complex(rng: np.random.Generator, count: int, radius: float) -> list[complex]:
    points = []
    while len(points) < count:
        z = complex(round(rng.uniform(-radius, radius), 6), round(rng.uniform(-radius, radius), 6))
        if abs(z) <= radius and z != round(z.real):
            points.append(z)
    return points


def lerch_rows(grid: str) -> list[tuple[Identity, dict]]:
    xs = [round(0.1 * k, 1) for k in range(1, 51)]
    rows = [(LERCH_FORMULA, {"x": x}) for x in xs]
    if grid == "fast":
        return rows
    rng = np.random.default_rng(GRID_SEED)
    rows += [(LERCH_FORMULA, {"x": complex(a, b)}) for a in (0.5, 2.0) for b in (-1.0, 1.0)]
    rows.append((LERCH_ONE, {}))
    rows += [(LERCH_SHIFT, {"x": x}) for x in (0.3, 2.5, -1.5, -3.7, 1 + 2j)]
    rows += [(LERCH_POSITIVITY, {"x": x}) for x in xs]
    rows += [(LERCH_REFLECTION, {"x": z}) for z in _random_complex(rng, 1000, 8.0)]
    rows.append((LOG_GAMMA_INTEGRAL, {}))
    return rows


# ---------------------------------------------------------------------------
# regprod
# ---------------------------------------------------------------------------


def _quadratic_closed_form(p, st):
    y = p["y"]
    return regprod_power_form(0, math.sqrt(y), 2, -1, cfg=st.config).value, closed_form_quadratic(y)


def _quartic_closed_form(p, st):
    y = p["y"]
    product = regprod_power_form(0, y**0.25, 4, -1, start_index=1, cfg=st.config)
    return product.value, closed_form_quartic(y)


def _multiplicativity(p, st):
    q1 = MonicPoly.from_shifts(p["shifts1"])
    q2 = MonicPoly.from_shifts(p["shifts2"])
    return multiplicativity_ratio(q1, q2), 1.0


def _power_form_consistency(p, st):
    q = power_form_polynomial(p["x"], p["y"], p["m"], p["eps"])
    direct = regprod_power_form(p["x"], p["y"], p["m"], p["eps"], cfg=st.config)
    return regprod_poly(q, 0).value, direct.value


def _root_choice(p, st):
    args = (p["x"], p["y"], p["m"], p["eps"])
    chosen = regprod_power_form(*args, root_choice=p["root"], cfg=st.config)
    return chosen.value, regprod_power_form(*args, cfg=st.config).value


def _mellin_closure(p, st):
    m, y = p["m"], p["y"]
    if m == 1:
        oracle = regprod_power_form_oracle(0, 0, 1, 1, start_index=1, cfg=st.config)
        return oracle.value, CONSTANTS.sqrt_two_pi
    root = y ** (1.0 / m)
    oracle = regprod_power_form_oracle(0, root, m, -1, start_index=1, cfg=st.config)
    return oracle.value, regprod_power_form(0, root, m, -1, start_index=1, cfg=st.config).value


QUADRATIC_CLOSED_FORM = Identity("regprod_quadratic", ("gamma_formula", "sinh_form"), 1e-10, _quadratic_closed_form)
QUARTIC_CLOSED_FORM = Identity("regprod_quartic", ("gamma_formula", "cosh_cos_form"), 1e-10, _quartic_closed_form)
MULTIPLICATIVITY = Identity("regprod_multiplicativity", ("joint_product", "one"), 1e-9, _multiplicativity)
POWER_FORM_CONSISTENCY = Identity(
    "regprod_power_form", ("root_finder", "lerch_product"), 1e-9, _power_form_consistency
)
ROOT_CHOICE = Identity("regprod_root_choice", ("root_r", "root_0"), 1e-10, _root_choice)
MELLIN_CLOSURE = Identity("regprod_mellin_closure", ("mellin_oracle", "gamma_formula"), 1e-6, _mellin_closure)


def _random_shift_pairs(rng: np.random.Generator, count: int) -> list[dict]:
    pairs = []
    for _ in range(count):
        size = int(rng.integers(2, 7))
        shifts = [
            complex(round(rng.uniform(0.5, 5.0), 3), round(rng.uniform(-2.0, 2.0), 3)) for _ in range(size)
        ]
        split = int(rng.integers(1, size))
        pairs.append({"shifts1": shifts[:split], "shifts2": shifts[split:]})
    return pairs


def regprod_rows(grid: str) -> list[tuple[Identity, dict]]:
    ys = [0.25, 0.5, 1.0, 2.0, 4.0]
    rows = [(QUADRATIC_CLOSED_FORM, {"y": y}) for y in ys]
    rows += [(QUARTIC_CLOSED_FORM, {"y": y}) for y in ys]
    rows += [
        (MULTIPLICATIVITY, {"shifts1": [1], "shifts2": [2]}),
        (MULTIPLICATIVITY, {"shifts1": [3], "shifts2": [3]}),
        (MULTIPLICATIVITY, {"shifts1": [1j, -1j], "shifts2": [2j, -2j]}),
    ]
    if grid == "fast":
        rows += [(POWER_FORM_CONSISTENCY, {"m": m, "x": 0.5, "y": 1.0, "eps": -1}) for m in (2, 3)]
        rows += [(ROOT_CHOICE, {"m": 3, "x": 0.5, "y": 0.7, "eps": -1, "root": r}) for r in (1, 2)]
        rows += [(MELLIN_CLOSURE, {"m": 1, "y": 0.0}), (MELLIN_CLOSURE, {"m": 2, "y": 1.0})]
        return rows
    rng = np.random.default_rng(GRID_SEED)
    rows += [(MULTIPLICATIVITY, pair) for pair in _random_shift_pairs(rng, 50)]
    rows += [
        (POWER_FORM_CONSISTENCY, {"m": m, "x": x, "y": y, "eps": -1})
        for m in (2, 3, 4, 5)
        for x in (0.5, 1.0, 2.0)
        for y in (0.25, 1.0, 2.0)
    ]
    rows += [
        (ROOT_CHOICE, {"m": m, "x": 0.5, "y": 0.7, "eps": eps, "root": r})
        for m in (2, 3, 5)
        for eps in (1, -1)
        for r in range(1, m)
    ]
    rows.append((MELLIN_CLOSURE, {"m": 1, "y": 0.0}))
    rows += [(MELLIN_CLOSURE, {"m": m, "y": y}) for m in (2, 4) for y in (0.5, 1.0, 2.0)]
    return rows


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


def _digamma_vs_direct(p, st):
    args = (p["m"], p["x"], p["y"])
    return sum_digamma(*args, st.convention).value, sum_direct(*args, st.series).value


def _coth_form(p, st):
    y = p["y"]
    return sum_trig(2, y).value, sum_direct(2, 0, y, st.series).value


def _coth_identity(p, st):
    return coth_identity_residual(p["y"], st.series), 0.0


def _quartic_identity(p, st):
    return quartic_identity_residual(p["y"], st.series, st.convention), 0.0


def _cot_identity(p, st):
    return cot_sum_identity_residual(p["n"], p["y"], st.series, st.convention), 0.0


def _euler(p, st):
    j = p["j"]
    return euler_even_zeta(j), hurwitz_zeta(2 * j, 1, st.config)


def _euler_laurent(p, st):
    j = p["j"]
    return euler_zeta_from_coth(j)[j - 1], euler_even_zeta(j)


def _cot_laurent(p, st):
    n = p["n"]
    return zeta_from_cot_sum(n, st.convention), euler_even_zeta(n)


def _log_derivative(p, st):
    m, y = p["m"], p["y"]
    return log_regprod_derivative(m, y, st.config), sum_direct(m, 0, y, st.series).value


def _hurwitz_polygamma(p, st):
    m, x = p["m"], p["x"]
    return hurwitz_via_polygamma(m, x, st.convention), hurwitz_zeta(m, x, st.config)


DIGAMMA_VS_DIRECT = Identity("series_digamma", ("digamma_form", "direct_em"), 1e-9, _digamma_vs_direct)
COTH_FORM = Identity("series_coth_form", ("trig_form", "direct_em"), 1e-10, _coth_form)
COTH_IDENTITY = Identity("series_coth_identity", ("bilateral_sum", "coth"), 1e-10, _coth_identity)
QUARTIC_IDENTITY = Identity("series_quartic_identity", ("bilateral_sum", "sinh_sin_ratio"), 1e-9, _quartic_identity)
COT_IDENTITY = Identity("series_cot_identity", ("bilateral_sum", "cot_sum"), 1e-9, _cot_identity)
EULER = Identity("series_euler", ("bernoulli_form", "direct_em"), 1e-10, _euler)
EULER_LAURENT = Identity("series_euler_laurent", ("coth_taylor", "bernoulli_form"), 1e-8, _euler_laurent)
COT_LAURENT = Identity("series_cot_laurent", ("cot_taylor", "bernoulli_form"), 1e-8, _cot_laurent)
LOG_DERIVATIVE = Identity("series_log_derivative", ("product_derivative", "direct_em"), 1e-6, _log_derivative)
HURWITZ_POLYGAMMA = Identity("series_hurwitz_polygamma", ("polygamma", "hurwitz_em"), 1e-12, _hurwitz_polygamma)


def series_rows(grid: str) -> list[tuple[Identity, dict]]:
    dense = grid == "dense"
    rows = [
        (DIGAMMA_VS_DIRECT, {"m": m, "x": x, "y": y})
        for m in ((2, 3, 4, 5) if dense else (2, 4))
        for x in ((0.0, 0.5, 1.0) if dense else (0.0,))
        for y in ((0.25, 1.0, 2.0) if dense else (1.0,))
    ]
    rows += [(COTH_FORM, {"y": y}) for y in (0.25, 1.0, 4.0, 9.0)]
    count = 20 if dense else 4
    rows += [(COTH_IDENTITY, {"y": float(y)}) for y in np.linspace(0.1, 10.0, count)]
    rows += [(QUARTIC_IDENTITY, {"y": float(y)}) for y in np.linspace(0.1, 5.0, count)]
    cot_points = np.linspace(0.3, 1.45, 10 if dense else 2)
    rows += [
        (COT_IDENTITY, {"n": n, "y": float(y)})
        for n in ((3, 4, 5) if dense else (3,))
        for y in cot_points
    ]
    rows += [(EULER, {"j": j}) for j in range(1, 7)]
    rows += [(EULER_LAURENT, {"j": j}) for j in range(1, 5)]
    rows += [(COT_LAURENT, {"n": n}) for n in (2, 3)]
    rows += [
        (LOG_DERIVATIVE, {"m": m, "y": y})
        for m in (2, 4)
        for y in ((0.5, 1.0, 1.5, 2.0) if dense else (1.0,))
    ]
    rows += [
        (HURWITZ_POLYGAMMA, {"m": m, "x": x})
        for m, x in ((2, 1.0), (3, 1.0), (2, 0.5), (4, 2.5 + 1j))
    ]
    return rows


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------

_GEOMETRIC_LAURENT = {Fraction(-1): 1.0, Fraction(0): -0.5, Fraction(1): 1.0 / 12.0}


def _geometric_laurent(p, st):
    exponent = Fraction(p["exponent"])
    terms = dict(theta_asymptotic(ThetaSeries(1, 0), 2, st.convention, st.config).terms())
    return terms[exponent], _GEOMETRIC_LAURENT[exponent]


def _gaussian_expansion(p, st):
    expansion = theta_asymptotic(ThetaSeries(2, 0), 1, st.convention, st.config)
    if p["term"] == "leading":
        return expansion.leading_coeff, math.sqrt(math.pi) / 2
    return expansion.coeffs[0], -0.5


def _slope_t_max(m: int, x: float, y: float) -> float:
    # c_5 of θ_3(t, 0; 1) nearly cancels, so higher terms swamp it above t ~ 0.01
    return 0.01 if (m, x, y) == (3, 0.0, 1.0) else 0.1


def _expansion_slope(p, st):
    ts = ThetaSeries(p["m"], p["x"], p["y"])
    t_grid = np.geomspace(p["t_min"], p["t_max"], 12)
    return expansion_order_slope(ts, p["order"], t_grid, st.convention), p["order"] + 1


def _poisson(p, st):
    return poisson_check_theta2(p["t"], st.convention), 0.0


def _residue(p, st):
    m = p["m"]
    return mellin_residue(ThetaSeries(m, 0), st.config, convention=st.convention), 1.0 / m


def _mellin_consistency(p, st):
    ts = ThetaSeries(p["m"], p["x"], p["y"])
    return mellin_zeta(ts, p["s"], st.config, st.convention), zeta_direct(ts, p["s"], st.series)


GEOMETRIC_LAURENT = Identity("theta_geometric_laurent", ("expansion", "laurent_series"), 1e-12, _geometric_laurent)
GAUSSIAN_EXPANSION = Identity("theta_gaussian_expansion", ("expansion", "poisson_leading"), 1e-12, _gaussian_expansion)
EXPANSION_SLOPE = Identity(
    "theta_expansion_slope", ("loglog_fit", "order_plus_one"), 0.15, _expansion_slope, absolute=True
)
POISSON = Identity("theta_poisson", ("direct_theta", "transformed_theta"), 1e-12, _poisson)
RESIDUE = Identity("theta_residue", ("mellin_limit", "one_over_m"), 1e-6, _residue)
MELLIN_CONSISTENCY = Identity("theta_mellin", ("mellin_continuation", "direct_em"), 1e-8, _mellin_consistency)


def theta_rows(grid: str) -> list[tuple[Identity, dict]]:
    dense = grid == "dense"
    rows = [(GEOMETRIC_LAURENT, {"exponent": e}) for e in (-1, 0, 1)]
    rows += [(GAUSSIAN_EXPANSION, {"term": term}) for term in ("leading", "constant")]
    slope_cases = (
        [(m, x, y) for m in (1, 2, 3) for x in (0.0, 0.5) for y in (0.0, 1.0)]
        if dense
        else [(1, 0.0, 0.0), (2, 0.5, 0.0), (3, 0.5, 1.0)]
    )
    rows += [
        (
            EXPANSION_SLOPE,
            {"m": m, "x": x, "y": y, "order": 4, "t_min": 1e-3, "t_max": _slope_t_max(m, x, y)},
        )
        for m, x, y in slope_cases
        # θ_2(t, 0; 0) matches its expansion to all orders
        if (m, x, y) != (2, 0.0, 0.0)
    ]
    rows += [(POISSON, {"t": t}) for t in (0.01, 0.1, 1.0, math.pi, 10.0, 100.0)]
    rows += [(RESIDUE, {"m": m}) for m in ((2, 3, 4) if dense else (2,))]
    if dense:
        rows += [
            (MELLIN_CONSISTENCY, {"m": m, "x": x, "y": y, "s": 2.0})
            for m in (2, 3, 4)
            for x in (0.0, 0.5, 1.0)
            for y in (0.0, 0.5, 2.0)
        ]
        rows.append((MELLIN_CONSISTENCY, {"m": 3, "x": 0.5, "y": 0.5, "s": 1.5 + 1j}))
    else:
        rows.append((MELLIN_CONSISTENCY, {"m": 2, "x": 0.0, "y": 1.0, "s": 1.0}))
    return rows


_SUITE_ROWS = {
    "lerch": lerch_rows,
    "regprod": regprod_rows,
    "series": series_rows,
    "theta": theta_rows,
}


# ---------------------------------------------------------------------------
# Running and rendering
# ---------------------------------------------------------------------------


def suite_rows(names, grid: str = "fast") -> list[tuple[Identity, dict]]:
    if grid not in GRIDS:
        raise ValueError(f"Unknown grid: {grid!r}")
    rows = []
    for name in names:
        if name not in _SUITE_ROWS:
            raise ValueError(f"Unknown suite: {name!r}")
        rows += _SUITE_ROWS[name](grid)
    return rows


def evaluate_row(identity: Identity, point: dict, settings: Settings) -> VerificationReport:
    """Evaluate one row; a raised error becomes a failed row."""
    try:
        lhs, rhs = identity.evaluate(point, settings)
    except (ZetaRegError, ArithmeticError, ValueError) as exc:
        LOGGER.debug("%s at %s raised %s", identity.identity_id, point, exc)
        return VerificationReport(
            identity_id=identity.identity_id,
            grid_point=point,
            lhs=None,
            rhs=None,
            abs_residual=math.nan,
            rel_residual=math.nan,
            tolerance=identity.tolerance,
            passed=False,
            method_pair=identity.method_pair,
            error=f"{type(exc).__name__}: {exc}",
        )
    return make_report(identity, point, lhs, rhs)


def run_suite(names, grid: str, settings: Settings) -> list[VerificationReport]:
    """Evaluate the named suites concurrently; reports come back in grid order."""
    rows = suite_rows(names, grid)
    LOGGER.debug("running %d rows of %s on the %s grid", len(rows), ", ".join(names), grid)
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        return list(pool.map(lambda row: evaluate_row(row[0], row[1], settings), rows))


def format_complex(z: complex | None) -> str:
    if z is None:
        return ""
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _format_float(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _json_default(obj):
    if isinstance(obj, complex):
        return format_complex(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def report_record(report: VerificationReport) -> dict:
    return {
        "identity_id": report.identity_id,
        "grid_point": report.grid_point,
        "lhs": format_complex(report.lhs),
        "rhs": format_complex(report.rhs),
        "abs_residual": _format_float(report.abs_residual),
        "rel_residual": _format_float(report.rel_residual),
        "tolerance": report.tolerance,
        "pass": report.passed,
        "method_pair": list(report.method_pair),
        "error": report.error,
    }


def render_json(reports) -> str:
    """One JSON record per line."""
    return "".join(json.dumps(report_record(r), default=_json_default) + "\n" for r in reports)


CSV_FIELDS = (
    "identity_id",
    "grid_point",
    "lhs",
    "rhs",
    "abs_residual",
    "rel_residual",
    "tolerance",
    "pass",
    "method_pair",
    "error",
)


def render_csv(reports) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        record = report_record(report)
        record["grid_point"] = json.dumps(record["grid_point"], default=_json_default)
        record["method_pair"] = "/".join(record["method_pair"])
        record["abs_residual"] = "" if record["abs_residual"] is None else f"{record['abs_residual']:.17g}"
        record["rel_residual"] = "" if record["rel_residual"] is None else f"{record['rel_residual']:.17g}"
        record["error"] = record["error"] or ""
        writer.writerow(record)
    return buffer.getvalue()


def summarize(reports) -> str:
    failed = [r for r in reports if not r.passed]
    lines = [f"{len(reports)} rows, {len(reports) - len(failed)} passed, {len(failed)} failed"]
    for report in failed:
        detail = report.error or f"abs={report.abs_residual:.3g} rel={report.rel_residual:.3g}"
        lines.append(f"  FAIL {report.identity_id} {json.dumps(report.grid_point, default=_json_default)}: {detail}")
    return "\n".join(lines)

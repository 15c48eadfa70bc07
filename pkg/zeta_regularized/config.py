"""Evaluation settings: truncation, quadrature tolerance, sign conventions."""

import enum
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from dotenv import dotenv_values, load_dotenv

from .errors import ConfigError

CONFIG_DIR = Path(os.environ.get("ZETAREG_CONFIG_DIR", Path.home() / ".config" / "zetareg"))

QUAD_TOL_ENV = "ZETAREG_QUAD_TOL"
WORKERS_ENV = "ZETAREG_WORKERS"

MIN_TRUNC = 8
MIN_EM_ORDER = 2
MAX_EM_ORDER = 32
MIN_QUAD_TOL = 1e-14
MAX_QUAD_TOL = 1e-4


class SignConvention(enum.Enum):
    """Which version of a conflicting formula to use.

    VALIDATED is the version confirmed by an independent numerical oracle;
    PRINTED reproduces the formula exactly as published.
    """

    VALIDATED = "validated"
    PRINTED = "printed"


@dataclass(frozen=True)
class EvalConfig:
    trunc: int = 50  # N, explicit terms before the Euler-Maclaurin tail
    em_order: int = 12  # J, Bernoulli corrections in the tail
    quad_tol: float = 1e-11
    overflow_clamp: float = 700.0  # largest |argument| passed to exp-type helpers

    def __post_init__(self):
        if self.trunc < MIN_TRUNC:
            raise ConfigError(f"trunc must be >= {MIN_TRUNC}, got {self.trunc}")
        if not MIN_EM_ORDER <= self.em_order <= MAX_EM_ORDER:
            raise ConfigError(
                f"em_order must be in [{MIN_EM_ORDER}, {MAX_EM_ORDER}], got {self.em_order}"
            )
        if not MIN_QUAD_TOL <= self.quad_tol <= MAX_QUAD_TOL:
            raise ConfigError(
                f"quad_tol must be in [{MIN_QUAD_TOL:g}, {MAX_QUAD_TOL:g}], got {self.quad_tol:g}"
            )
        if not self.overflow_clamp > 0:
            raise ConfigError(f"overflow_clamp must be > 0, got {self.overflow_clamp}")


DEFAULT_CONFIG = EvalConfig()
SERIES_CONFIG = EvalConfig(trunc=10_000, em_order=8)


@dataclass(frozen=True)
class Settings:
    """Everything the CLI and the verification suites need to reproduce a run."""

    config: EvalConfig = DEFAULT_CONFIG
    series: EvalConfig = SERIES_CONFIG
    convention: SignConvention = SignConvention.VALIDATED
    workers: int = 4
    extras: dict = field(default_factory=dict)  # unrecognised file keys, kept for reporting


# Keys accepted in a --config file, mapped to (target, field, parser)
_FILE_KEYS = {
    "TRUNC": ("config", "trunc", int),
    "EM_ORDER": ("config", "em_order", int),
    "SERIES_TRUNC": ("series", "trunc", int),
    "SERIES_EM_ORDER": ("series", "em_order", int),
    "QUAD_TOL": ("both", "quad_tol", float),
    "OVERFLOW_CLAMP": ("both", "overflow_clamp", float),
}


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _parse(key: str, raw: str | None, parser):
    if raw is None:
        raise ConfigError(f"{key} has no value")
    try:
        return parser(raw)
    except ValueError as exc:
        raise ConfigError(f"Invalid value for {key}: {raw!r}") from exc


def get_quad_tol() -> float | None:
    raw = os.environ.get(QUAD_TOL_ENV)
    return None if raw is None else _parse(QUAD_TOL_ENV, raw, float)


def get_workers() -> int | None:
    raw = os.environ.get(WORKERS_ENV)
    return None if raw is None else _parse(WORKERS_ENV, raw, int)


def load_env_files() -> None:
    """Load .env from cwd first, then the user config directory."""
    load_dotenv()
    load_dotenv(CONFIG_DIR / ".env")


def read_config_file(path: Path) -> dict[str, str | None]:
    """Returns the key-value pairs of a config file, upper-cased keys."""
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    return {key.upper(): value for key, value in dotenv_values(path).items()}


def load_settings(
    config_path: Path | None = None,
    *,
    quad_tol: float | None = None,
    workers: int | None = None,
    paper_signs: bool | None = None,
) -> Settings:
    """Resolve settings: defaults < config file < environment < explicit arguments."""
    fields = {"config": {}, "series": {}}
    convention = SignConvention.VALIDATED
    n_workers = Settings.workers
    extras = {}

    if config_path is not None:
        for key, raw in read_config_file(config_path).items():
            if key in _FILE_KEYS:
                target, name, parser = _FILE_KEYS[key]
                value = _parse(key, raw, parser)
                for t in ("config", "series") if target == "both" else (target,):
                    fields[t][name] = value
            elif key == "WORKERS":
                n_workers = _parse(key, raw, int)
            elif key == "PAPER_SIGNS":
                if _parse(key, raw, _parse_bool):
                    convention = SignConvention.PRINTED
            else:
                extras[key] = raw

    env_tol = get_quad_tol()
    if env_tol is not None:
        fields["config"]["quad_tol"] = fields["series"]["quad_tol"] = env_tol
    env_workers = get_workers()
    if env_workers is not None:
        n_workers = env_workers

    if quad_tol is not None:
        fields["config"]["quad_tol"] = fields["series"]["quad_tol"] = quad_tol
    if workers is not None:
        n_workers = workers
    if paper_signs:
        convention = SignConvention.PRINTED

    if n_workers < 1:
        raise ConfigError(f"workers must be >= 1, got {n_workers}")

    return Settings(
        config=replace(DEFAULT_CONFIG, **fields["config"]),
        series=replace(SERIES_CONFIG, **fields["series"]),
        convention=convention,
        workers=n_workers,
        extras=extras,
    )

"""Adaptive quadrature wrappers over scipy.integrate.quad."""

import logging
import warnings
from collections.abc import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import ConvergenceError

LOGGER = logging.getLogger(__name__)

QUAD_LIMIT = 200


def quad_real(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float,
    **kwargs,
) -> tuple[float, float]:
    """Integrate a real function, returning (value, abs_error).

    Extra keyword arguments (``weight``, ``wvar``) go straight to ``quad``.
    Raises ConvergenceError when the error estimate exceeds
    ``tol * max(1, |value|)``.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        if "weight" in kwargs and np.isinf(upper):
            # QAWF ignores epsrel and takes its own subdivision limit
            value, error = quad(func, lower, upper, epsabs=tol, limlst=100, **kwargs)
        else:
            value, error = quad(
                func, lower, upper, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT, **kwargs
            )
    if not np.isfinite(value) or error > tol * max(1.0, abs(value)):
        raise ConvergenceError(
            f"quadrature on [{lower}, {upper}] reached error {error:.3g} "
            f"above tolerance {tol:.3g}"
        )
    for warning in caught:
        LOGGER.debug("quad on [%s, %s]: %s", lower, upper, warning.message)
    return value, error


def quad_complex(
    func: Callable[[float], complex],
    lower: float,
    upper: float,
    tol: float,
) -> tuple[complex, float]:
    """Integrate a complex-valued function of a real variable.

    Real and imaginary parts are integrated separately; the returned error is
    the sum of both estimates.
    """
    re, re_err = quad_real(lambda t: func(t).real, lower, upper, tol)
    im, im_err = quad_real(lambda t: func(t).imag, lower, upper, tol)
    return complex(re, im), re_err + im_err

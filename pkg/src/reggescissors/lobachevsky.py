"""Evaluation of the Lobachevsky function.

The Lobachevsky function is defined by the integral

    lob(theta) = -integral_0^theta log|2 sin u| du,

equivalently by the Fourier series (1/2) sum_{n>=1} sin(2 n theta) / n^2.
It is odd, pi-periodic, and attains its maximum at pi/6.  Two independent
evaluation routes are provided: a fast reduced power series (primary) and
adaptive quadrature of the defining integral (oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .exceptions import QuadratureError

__all__ = [
    "LOBACHEVSKY_MAX_ARG",
    "LobachevskyEval",
    "lobachevsky",
    "lobachevsky_quadrature",
]

_PI = math.pi

# Coefficients zeta(2m) / (m (2m+1)) of the reduced series.  Direct summation
# of the Fourier series converges like 1/N; splitting off the logarithmic
# singularity of the integrand sums the tail in closed form and leaves
#
#   lob(x) = x (1 - log 2x) + x * sum_{m>=1} c_m (x/pi)^(2m),   0 < x <= pi/2,
#
# whose terms decay at least like 4^-m.  48 terms reach full double precision.
_M = np.arange(1, 49)
_SERIES_COEF = special.zeta(2 * _M) / (_M * (2 * _M + 1))

#: Location of the global maximum of the Lobachevsky function.
LOBACHEVSKY_MAX_ARG = _PI / 6


@dataclass(frozen=True)
class LobachevskyEval:
    """One evaluation record: argument, value, and the route that produced it."""

    theta: float
    value: float
    method: str  # "series" or "quadrature"


def _reduce_mod_pi(theta: np.ndarray) -> np.ndarray:
    """Map arguments into (-pi/2, pi/2] using pi-periodicity."""
    r = theta - _PI * np.round(theta / _PI)
    return np.where(r <= -_PI / 2, r + _PI, r)


def lobachevsky(theta):
    """Evaluate the Lobachevsky function (absolute error below 1e-12).

    Accepts a float or an ndarray; returns the same shape.  Non-finite
    input raises ``GeometryDomainError``-compatible ``ValueError``.
    """
    arr = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("lobachevsky: argument must be finite")
    r = _reduce_mod_pi(arr)
    x = np.abs(r)
    q = (x / _PI) ** 2
    h = np.zeros_like(q)
    for c in _SERIES_COEF[::-1]:
        h = h * q + c
    with np.errstate(divide="ignore", invalid="ignore"):
        val = x * (1.0 - np.log(2.0 * x)) + x * q * h
    out = np.sign(r) * np.where(x > 0, val, 0.0)
    if np.isscalar(theta) or np.ndim(theta) == 0:
        return float(out)
    return out


def lobachevsky_quadrature(theta: float, tol: float = 1e-10) -> float:
    """Evaluate the defining integral directly by adaptive quadrature.

    Serves as the oracle for ``lobachevsky``: no periodicity or oddness
    reduction beyond the sign of the integration range is applied, so a
    request for theta = 10 really integrates across three logarithmic
    singularities of log|2 sin u|.

    Raises ``QuadratureError`` (carrying the achieved error estimate) if
    the requested tolerance is not met, ``ValueError`` for tol <= 0 or a
    non-finite argument.
    """
    th = float(theta)
    if not math.isfinite(th):
        raise ValueError("lobachevsky_quadrature: argument must be finite")
    if not tol > 0:
        raise ValueError("lobachevsky_quadrature: tol must be positive")
    sign = 1.0
    if th < 0:  # integrand is even, so the integral is odd
        sign, th = -1.0, -th
    if th == 0.0:
        return 0.0

    def integrand(u):
        return -np.log(2.0 * np.abs(np.sin(u)))

    # interior singularities at multiples of pi; endpoints are handled by
    # the adaptive subdivision itself
    interior = [k * _PI for k in range(1, int(th / _PI) + 1) if abs(k * _PI - th) > 1e-13]
    out = integrate.quad(
        integrand,
        0.0,
        th,
        points=interior or None,
        limit=500,
        epsabs=tol / 2,
        epsrel=1e-13,
        full_output=1,
    )
    value, abserr = out[0], out[1]
    if abserr > tol:
        raise QuadratureError(
            f"lobachevsky_quadrature: achieved error {abserr:.3e} exceeds tol {tol:.3e}",
            achieved=abserr,
        )
    return sign * float(value)


def evaluate(theta: float, method: str = "series", tol: float = 1e-10) -> LobachevskyEval:
    """Evaluate by the requested route, returning a record."""
    if method == "series":
        return LobachevskyEval(float(theta), lobachevsky(float(theta)), "series")
    if method == "quadrature":
        return LobachevskyEval(float(theta), lobachevsky_quadrature(theta, tol), "quadrature")
    raise ValueError(f"unknown method {method!r}")

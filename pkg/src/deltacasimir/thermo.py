"""Casimir entropy by both routes, and the entropy-density integrand.

The canonical entropy comes from the Maxwell relation: with the entropy
pinned to zero at infinite separation,

    S(d, That) = int_d^Lambda ddt  s(dt, That),
    s(dt, That) = (1/2pi) int_0^inf dq (q/2That)^2 csch^2(q/2That)
                                   [1 - 8q^2(1+2q^2)/W(q, dt)]

where s = -dF/dThat is the entropy density in separation.  The distance
integral diverges logarithmically (s -> 1/(4 dt) at large dt), so every
entropy value carries its infrared cutoff Lambda as mandatory metadata.

The Lifshitz entropy has the closed Matsubara form

    S_L = -(1/2) log[2 pi That (d+2)/Lambda] - 1/2                (zero mode)
          - sum_{n>=1} log[1 - e^{-4 pi n That d}/(1+4 pi n That)^2]
          - sum_{n>=1} 4 pi n That (4 pi n That d + d + 2) /
                       {(4 pi n That+1) [(4 pi n That+1)^2 e^{4 pi n That d} - 1]}

With the zero-mode line kept it diverges to +inf as That -> 0; with it
dropped the remainder is negative at moderate separations.  Either way it
conflicts with the third law, which is the point of computing both routes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import DimensionlessPoint
from .numerics import (
    QuadratureEstimate,
    _adaptive_gk,
    _thermal_weight_raw,
    sum_exponential_series,
)
from .scattering import flux_deficit

__all__ = [
    "ENTROPY_TOL",
    "ENTROPY_INNER_TOL",
    "EntropyValue",
    "EntropyDensity",
    "entropy_density_canonical",
    "entropy_canonical",
    "entropy_lifshitz",
    "entropy_lifshitz_temperature_slope",
]

ENTROPY_TOL = 1e-6
ENTROPY_INNER_TOL = 1e-8
DEFAULT_CUTOFF_LAMBDA = 100.0

ENTROPY_METHODS = ("canonical", "lifshitz", "lifshitz_no_zero_mode")


@dataclass(frozen=True)
class EntropyValue:
    """Dimensionless Casimir entropy (k_B = 1) at infrared cutoff Lambda."""

    value: float
    method: str
    point: DimensionlessPoint
    cutoff_lambda: float
    estimate: QuadratureEstimate


@dataclass(frozen=True)
class EntropyDensity:
    """-dF/dThat at separation dtilde: the integrand of the distance integral."""

    value: float
    dtilde: float
    That: float
    estimate: QuadratureEstimate


def _check_positive(name, x):
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be finite and > 0, got {x!r}")


def entropy_density_canonical(dtilde: float, That: float,
                              tol: float = ENTROPY_INNER_TOL) -> EntropyDensity:
    """Entropy density in separation at (dtilde, That).

    The csch^2 weight kills the integrand beyond q ~ 40 That (u = 20); the
    kernel oscillates with period pi/dtilde and has narrow cavity-resonance
    dips at small q, so panels are seeded at width <= pi/(4 dtilde) and
    refined adaptively.  The truncation remainder beyond q_max is bounded
    analytically and added to the error estimate.
    """
    _check_positive("dtilde", dtilde)
    _check_positive("That", That)
    _check_positive("tol", tol)
    q_max = 40.0 * That
    w = min(math.pi / (4.0 * dtilde), 2.5 * That, q_max / 8.0)
    n = min(int(math.ceil(q_max / w)), 300000)
    inv_2pi = 0.5 / math.pi

    def f(q):
        q = np.asarray(q, float)
        return inv_2pi * _thermal_weight_raw(q, That) * flux_deficit(q, dtilde)

    # |flux_deficit| <= 2 + 1/(2 q^2); int_{q_max}^inf tw dq <= 8 That e^{-2u}(u^2+u+1), u = 20
    u = q_max / (2.0 * That)
    mbound = 2.0 + 0.5 / (q_max * q_max)
    tail_bound = inv_2pi * mbound * 8.0 * That * math.exp(-2.0 * u) * (u * u + u + 1.0)

    v, e, ne, ok = _adaptive_gk(f, np.linspace(0.0, q_max, n + 1), tol)
    err = e + tail_bound
    est = QuadratureEstimate(v, err, ne, ok and err <= tol)
    return EntropyDensity(value=v, dtilde=float(dtilde), That=float(That), estimate=est)


def entropy_canonical(point: DimensionlessPoint,
                      cutoff_lambda: float = DEFAULT_CUTOFF_LAMBDA,
                      tol: float = ENTROPY_TOL,
                      inner_tol: float | None = None) -> EntropyValue:
    """Canonical entropy: distance integral of the density from d to Lambda.

    The outer integral runs on log-spaced adaptive panels (the density falls
    like 1/(4 dt), so log spacing equidistributes the work).  Inner density
    errors are budgeted at inner_tol and charged to the reported estimate as
    (Lambda - d) * inner_tol.
    """
    d, that = point.d, point.That
    _check_positive("That", that)
    _check_positive("tol", tol)
    if not (math.isfinite(cutoff_lambda) and cutoff_lambda > d):
        raise DomainError(f"cutoff_lambda must exceed d = {d!r}, got {cutoff_lambda!r}")
    if inner_tol is None:
        inner_tol = min(ENTROPY_INNER_TOL, 0.25 * tol / (cutoff_lambda - d))

    inner_evals = [0]
    inner_all_ok = [True]

    def g(ts):
        ts = np.atleast_1d(np.asarray(ts, float))
        out = np.empty(ts.shape)
        for i, t in enumerate(ts):
            dt = math.exp(t)
            dens = entropy_density_canonical(dt, that, inner_tol)
            inner_evals[0] += dens.estimate.evaluations
            inner_all_ok[0] &= dens.estimate.converged
            out[i] = dens.value * dt
        return out

    lo, hi = math.log(d), math.log(cutoff_lambda)
    n0 = max(4, int(math.ceil(hi - lo)))
    v, e, n_outer, ok = _adaptive_gk(g, np.linspace(lo, hi, n0 + 1), 0.75 * tol)
    err = e + (cutoff_lambda - d) * inner_tol
    evals = inner_evals[0]
    converged = ok and inner_all_ok[0] and err <= tol
    est = QuadratureEstimate(v, err, evals, converged)
    return EntropyValue(v, "canonical", point, float(cutoff_lambda), est)


def entropy_lifshitz(point: DimensionlessPoint,
                     cutoff_lambda: float = DEFAULT_CUTOFF_LAMBDA,
                     include_zero_mode: bool = True,
                     tol: float = 1e-12) -> EntropyValue:
    """Lifshitz entropy from the closed Matsubara form (see module docstring).

    ``include_zero_mode`` keeps or drops the cutoff-dependent first line;
    the two choices expose the two horns of the third-law dilemma.
    """
    d, that = point.d, point.That
    _check_positive("That", that)
    if not (math.isfinite(cutoff_lambda) and cutoff_lambda > 0):
        raise DomainError(f"cutoff_lambda must be finite and > 0, got {cutoff_lambda!r}")
    c = 4.0 * math.pi * that

    def log_term(n):
        return -math.log1p(-math.exp(-c * n * d) / (1.0 + c * n) ** 2)

    def slope_term(n):
        # multiplied through by e^{-x} so nothing overflows at large n
        e = math.exp(-c * n * d)
        return c * n * (c * n * d + d + 2.0) * e / ((c * n + 1.0) * ((c * n + 1.0) ** 2 - e))

    s1 = sum_exponential_series(log_term, 1, tol)
    s2 = sum_exponential_series(slope_term, 1, tol)
    value = s1.value - s2.value
    if include_zero_mode:
        value += -0.5 * math.log(2.0 * math.pi * that * (d + 2.0) / cutoff_lambda) - 0.5
    method = "lifshitz" if include_zero_mode else "lifshitz_no_zero_mode"
    err = s1.abs_error_estimate + s2.abs_error_estimate
    est = QuadratureEstimate(value, err, s1.evaluations + s2.evaluations,
                             s1.converged and s2.converged)
    return EntropyValue(value, method, point, float(cutoff_lambda), est)


def entropy_lifshitz_temperature_slope(point: DimensionlessPoint,
                                       cutoff_lambda: float = DEFAULT_CUTOFF_LAMBDA,
                                       delta: float = 1e-3,
                                       include_zero_mode: bool = True,
                                       tol: float = 1e-12) -> float:
    """Central finite difference of the Lifshitz entropy in That.

    In the long-distance regime (d >> 2) with the zero mode kept, this
    approaches -1/(2 That): entropy dropping with rising temperature.
    """
    if not (isinstance(delta, (int, float)) and math.isfinite(delta) and delta > 0):
        raise DomainError(f"delta must be finite and > 0, got {delta!r}")
    that = point.That
    if that - delta <= 0:
        raise DomainError("delta must be smaller than That")
    up = entropy_lifshitz(DimensionlessPoint(point.d, that + delta),
                          cutoff_lambda, include_zero_mode, tol)
    dn = entropy_lifshitz(DimensionlessPoint(point.d, that - delta),
                          cutoff_lambda, include_zero_mode, tol)
    return (up.value - dn.value) / (2.0 * delta)

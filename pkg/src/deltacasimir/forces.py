"""Casimir force and free energy of the barrier pair, by both routes.

Canonical route: the force is a real-frequency mode sum,

    F(d, That) = -(1/2pi) int_0^inf dq q/(1 - e^{-q/That}) [1 - 8q^2(1+2q^2)/W(q,d)]

(the bracket is ``scattering.flux_deficit``; the Bose factor drops to 1 at
That = 0).  The integrand oscillates like cos(2dq)/(2q) at large q, so it
goes through ``integrate_oscillatory_tail`` with angular rate 2d.

Lifshitz route: at That = 0 the imaginary-axis form

    F(d) = -(1/4pi) int_0^inf dz z / (e^{dz} (1+z)^2 - 1)

decays exponentially; at That > 0 it becomes the Matsubara sum

    F(d, That) = -[ sum_{n>=1} 4 pi n That^2 / (e^{4 pi n That d}(1+4 pi n That)^2 - 1)
                    + That/(2(d+2)) ]

whose zero-frequency part That/(2(d+2)) is cutoff independent even though
the regularized free energy

    Fcal(d, That) = That sum_{n>=1} log[1 - e^{-4 pi n That d}/(1+4 pi n That)^2]
                    + (That/2) log[2 pi That (d+2)/Lambda]

diverges logarithmically as the infrared cutoff Lambda grows.

All values are dimensionless: forces in units hbar gamma^2/v^3, free energy
in units hbar gamma/v.  Negative force means attraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import DimensionlessPoint
from .numerics import (
    OscillatorySpec,
    QuadratureEstimate,
    integrate_oscillatory_tail,
    integrate_smooth_semi_infinite,
    sum_exponential_series,
)
from .scattering import flux_deficit

__all__ = [
    "FORCE_TOL",
    "DEFAULT_CUTOFF_LAMBDA",
    "ForceValue",
    "FreeEnergyValue",
    "force_zero_t_canonical",
    "force_zero_t_lifshitz",
    "force_finite_t_canonical",
    "force_finite_t_lifshitz",
    "force_lifshitz_zero_mode_term",
    "free_energy_lifshitz",
    "asymptotic_force",
    "casimir_force",
]

FORCE_TOL = 1e-10
DEFAULT_CUTOFF_LAMBDA = 100.0

METHODS = ("canonical", "lifshitz")


@dataclass(frozen=True)
class ForceValue:
    """Dimensionless Casimir force (units hbar gamma^2/v^3, < 0 = attraction)."""

    value: float
    method: str
    point: DimensionlessPoint
    estimate: QuadratureEstimate


@dataclass(frozen=True)
class FreeEnergyValue:
    """Regularized dimensionless free energy (units hbar gamma/v) at cutoff Lambda."""

    value: float
    cutoff_lambda: float
    point: DimensionlessPoint
    estimate: QuadratureEstimate


def _require_d(d):
    if not (isinstance(d, (int, float)) and math.isfinite(d) and d > 0):
        raise DomainError(f"d must be finite and > 0, got {d!r}")


def _zero_t_integrand(d):
    c = -0.5 / math.pi

    def f(q):
        q = np.asarray(q, float)
        return c * q * flux_deficit(q, d)

    return f


def _finite_t_integrand(d, that):
    c = -0.5 / math.pi

    def f(q):
        q = np.asarray(q, float)
        qb = np.full(q.shape, that)
        m = q > 0
        qb[m] = q[m] / (-np.expm1(-q[m] / that))   # q * bose_factor, -> That at q=0
        return c * qb * flux_deficit(q, d)

    return f


def force_zero_t_canonical(d: float, tol: float = FORCE_TOL) -> ForceValue:
    """Zero-temperature force from the real-frequency mode sum."""
    _require_d(d)
    spec = OscillatorySpec.for_rate(2.0 * d)
    est = integrate_oscillatory_tail(_zero_t_integrand(d), spec, tol)
    return ForceValue(est.value, "canonical", DimensionlessPoint(d, 0.0), est)


def force_zero_t_lifshitz(d: float, tol: float = FORCE_TOL) -> ForceValue:
    """Zero-temperature force from the imaginary-axis integral."""
    _require_d(d)
    c = -0.25 / math.pi

    def g(z):
        z = np.asarray(z, float)
        # e^{dz}(1+z)^2 - 1 written via expm1 so the z -> 0 endpoint is regular
        den = np.expm1(d * z) * (1.0 + z) ** 2 + z * (2.0 + z)
        out = np.full(z.shape, 1.0 / (d + 2.0))
        m = z > 0
        out[m] = z[m] / den[m]
        return c * out

    est = integrate_smooth_semi_infinite(g, 1.0 / d, tol)
    return ForceValue(est.value, "lifshitz", DimensionlessPoint(d, 0.0), est)


def force_finite_t_canonical(point: DimensionlessPoint, tol: float = FORCE_TOL) -> ForceValue:
    """Finite-temperature force from the Bose-weighted mode sum.

    That = 0 delegates to the zero-temperature path rather than taking a
    numerical limit (the Bose factor would underflow).  The q = 0 endpoint
    of the integrand is finite: q/(1-e^{-q/That}) -> That.
    """
    if point.That == 0.0:
        return force_zero_t_canonical(point.d, tol)
    d, that = point.d, point.That
    # push the switch point past the thermal scale so the tail fit sees an
    # essentially constant Bose factor
    spec = OscillatorySpec.for_rate(2.0 * d, min_switch=max(10.0, 8.0 * that))
    est = integrate_oscillatory_tail(_finite_t_integrand(d, that), spec, tol)
    return ForceValue(est.value, "canonical", point, est)


def force_finite_t_lifshitz(point: DimensionlessPoint, tol: float = FORCE_TOL) -> ForceValue:
    """Finite-temperature force from the Matsubara sum; cutoff independent."""
    d, that = point.d, point.That
    if that <= 0:
        raise DomainError("force_finite_t_lifshitz requires That > 0 "
                          "(use force_zero_t_lifshitz at That = 0)")
    c = 4.0 * math.pi * that

    def term(n):
        e = math.exp(-c * n * d)
        return 4.0 * math.pi * n * that * that * e / ((1.0 + c * n) ** 2 - e)

    s = sum_exponential_series(term, 1, tol)
    value = -(s.value + that / (2.0 * (d + 2.0)))
    est = QuadratureEstimate(value, s.abs_error_estimate, s.evaluations, s.converged)
    return ForceValue(value, "lifshitz", point, est)


def force_lifshitz_zero_mode_term(point: DimensionlessPoint) -> float:
    """The zero-frequency contribution -That/(2(d+2)) to the Matsubara force."""
    if point.That < 0:
        raise DomainError("That must be nonnegative")
    return -point.That / (2.0 * (point.d + 2.0))


def free_energy_lifshitz(point: DimensionlessPoint,
                         cutoff_lambda: float = DEFAULT_CUTOFF_LAMBDA,
                         tol: float = 1e-12) -> FreeEnergyValue:
    """Regularized free energy; shifts by -(That/2) log(L2/L1) under a
    cutoff change and diverges like -(That/2) log(Lambda) as Lambda -> inf."""
    d, that = point.d, point.That
    if that <= 0:
        raise DomainError("free_energy_lifshitz requires That > 0")
    if not (math.isfinite(cutoff_lambda) and cutoff_lambda > 0):
        raise DomainError(f"cutoff_lambda must be finite and > 0, got {cutoff_lambda!r}")
    c = 4.0 * math.pi * that

    def term(n):
        return math.log1p(-math.exp(-c * n * d) / (1.0 + c * n) ** 2)

    s = sum_exponential_series(term, 1, tol)
    value = that * s.value + 0.5 * that * math.log(2.0 * math.pi * that * (d + 2.0) / cutoff_lambda)
    est = QuadratureEstimate(value, that * s.abs_error_estimate, s.evaluations, s.converged)
    return FreeEnergyValue(value, cutoff_lambda, point, est)


def asymptotic_force(point: DimensionlessPoint, method: str) -> float:
    """Long-distance (d >> 1) asymptote: -That/(2d) Lifshitz, -That/(4d) canonical."""
    if method == "lifshitz":
        return -point.That / (2.0 * point.d)
    if method == "canonical":
        return -point.That / (4.0 * point.d)
    raise DomainError(f"method must be one of {METHODS}, got {method!r}")


def casimir_force(point: DimensionlessPoint, method: str, tol: float = FORCE_TOL) -> ForceValue:
    """Dispatch on method and temperature (That = 0 goes to the zero-T paths)."""
    if method == "canonical":
        if point.That > 0:
            return force_finite_t_canonical(point, tol)
        return force_zero_t_canonical(point.d, tol)
    if method == "lifshitz":
        if point.That > 0:
            return force_finite_t_lifshitz(point, tol)
        return force_zero_t_lifshitz(point.d, tol)
    raise DomainError(f"method must be one of {METHODS}, got {method!r}")

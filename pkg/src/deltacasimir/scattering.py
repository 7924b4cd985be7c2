"""Single-mode scattering on two identical delta barriers a distance d apart.

For a unit right-moving wave the piecewise mode is e^{iqx} + B e^{-iqx} on
the left, C e^{iqx} + D e^{-iqx} between the barriers, G e^{iqx} on the
right (dimensionless units: phi continuous, phi' jumps by phi at each
barrier).  With den = (2q+i)^2 + e^{2iqd} the closed forms are

    C = 2q(2q+i)/den            D = -2iq e^{iqd}/den
    G = 4q^2/den                B = -2i (sin(qd) + 2q cos(qd))/den

Probability-flow continuity gives |B|^2+|G|^2 = 1 and |D|^2+|G|^2 = |C|^2,
so the force kernel K = |C|^2 + |D|^2 - 1 can be written with a single real
denominator:

    K = 8q^2(1+2q^2)/W - 1,
    W = |1 - e^{2idq}(1+2iq)^2|^2 = 4(sin(dq) + 2q cos(dq))^2 + 16 q^4.

The factored form of W is a rearrangement of the expanded trigonometric
form 1 + (1+4q^2)^2 - 2(1-4q^2)cos(2dq) + 8q sin(2dq) that stays accurate
as q -> 0, where all the individually O(1) terms cancel to O(q^2).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularSystemError

__all__ = [
    "ScatteringCoefficients",
    "KernelValue",
    "coefficients_closed_form",
    "coefficients_linear_solve",
    "kernel",
    "flux_deficit",
]


@dataclass(frozen=True)
class ScatteringCoefficients:
    """Complex amplitudes of one scattering mode."""

    B: complex
    C: complex
    D: complex
    G: complex

    @property
    def unitarity_residual(self) -> float:
        """|B|^2 + |G|^2 - 1 (zero in exact arithmetic)."""
        return abs(self.B) ** 2 + abs(self.G) ** 2 - 1.0

    @property
    def flux_residual(self) -> float:
        """|D|^2 + |G|^2 - |C|^2 (zero in exact arithmetic)."""
        return abs(self.D) ** 2 + abs(self.G) ** 2 - abs(self.C) ** 2


@dataclass(frozen=True)
class KernelValue:
    """Force kernel K = |C|^2 + |D|^2 - 1 at one (q, d); K >= -1 always."""

    value: float
    q: float
    d: float


def _check_qd(q, d, allow_zero_q=False):
    if not (isinstance(d, (int, float)) and math.isfinite(d) and d > 0):
        raise DomainError(f"d must be finite and > 0, got {d!r}")
    qmin_ok = q >= 0 if allow_zero_q else q > 0
    if not (isinstance(q, (int, float)) and math.isfinite(q) and qmin_ok):
        cmp = ">= 0" if allow_zero_q else "> 0"
        raise DomainError(f"q must be finite and {cmp}, got {q!r}")


def coefficients_closed_form(q: float, d: float) -> ScatteringCoefficients:
    """Closed-form B, C, D, G at wavenumber q > 0, separation d > 0.

    No intermediate exceeds ~q^2, so the evaluation stays in range for
    q up to 1e8 and far beyond.
    """
    _check_qd(q, d)
    qd = q * d
    den = (2.0 * q + 1j) ** 2 + cmath.exp(2j * qd)
    c = 2.0 * q * (2.0 * q + 1j) / den
    dk = -2j * q * cmath.exp(1j * qd) / den
    g = 4.0 * q * q / den
    b = -2j * (math.sin(qd) + 2.0 * q * math.cos(qd)) / den
    return ScatteringCoefficients(B=b, C=c, D=dk, G=g)


def coefficients_linear_solve(q: float, d: float,
                              incidence: str = "left") -> ScatteringCoefficients:
    """B, C, D, G from the 4x4 boundary-matching system, no closed form.

    Unknowns are matched by continuity of phi and the unit jump of phi' at
    the barriers x = -d/2 and x = +d/2.  ``incidence`` selects a unit wave
    coming from the left or from the right; the symmetric potential makes
    both give the same coefficients, which the closed form relies on.
    """
    _check_qd(q, d)
    if incidence not in ("left", "right"):
        raise DomainError(f"incidence must be 'left' or 'right', got {incidence!r}")
    p = cmath.exp(0.5j * q * d)
    iq = 1j * q
    if incidence == "left":
        # unknowns [B, C, D, G]; unit wave e^{iqx} incoming on region I
        a = np.array([
            [p,            -1.0 / p,  -p,        0.0],        # phi continuous at -d/2
            [iq * p - p,   iq / p,    -iq * p,   0.0],        # phi' jump at -d/2
            [0.0,          p,         1.0 / p,   -p],         # phi continuous at +d/2
            [0.0,          -iq * p,   iq / p,    iq * p - p], # phi' jump at +d/2
        ], dtype=complex)
        rhs = np.array([-1.0 / p, (1.0 + iq) / p, 0.0, 0.0], dtype=complex)
    else:
        # unit wave e^{-iqx} incoming on region III; regions mirror x -> -x
        a = np.array([
            [p,            -1.0 / p,  -p,        0.0],        # phi continuous at +d/2
            [iq * p - p,   iq / p,    -iq * p,   0.0],        # phi' jump at +d/2
            [0.0,          p,         1.0 / p,   -p],         # phi continuous at -d/2
            [0.0,          -iq * p,   iq / p,    iq * p - p], # phi' jump at -d/2
        ], dtype=complex)
        rhs = np.array([-1.0 / p, (1.0 + iq) / p, 0.0, 0.0], dtype=complex)
    try:
        x = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"matching system singular at q={q!r}, d={d!r}") from exc
    if not np.all(np.isfinite(x.view(float))):
        raise SingularSystemError(f"matching system ill-conditioned at q={q!r}, d={d!r}")
    return ScatteringCoefficients(B=complex(x[0]), C=complex(x[1]),
                                  D=complex(x[2]), G=complex(x[3]))


def flux_deficit(q, d):
    """1 - |C|^2 - |D|^2 = -K, vectorized over q (q >= 0 allowed).

    This is the quantity weighted by the occupancy factors in every force
    and entropy integrand.  Evaluated as N/W with

        N = 4 sin^2(dq) + 8q sin(2dq) + 8q^2 cos(2dq)
        W = 4 (sin(dq) + 2q cos(dq))^2 + 16 q^4

    both free of cancellation; the q -> 0 limit is 1 - 2/(d+2)^2.
    """
    q_in = q
    q = np.atleast_1d(np.asarray(q, float))
    s = np.sin(q * d)
    c = np.cos(q * d)
    sc = s + 2.0 * q * c
    w = 4.0 * sc * sc + 16.0 * q ** 4
    n = 4.0 * s * s + 16.0 * q * s * c + 8.0 * q * q * (1.0 - 2.0 * s * s)
    out = np.full(q.shape, (d * d + 4.0 * d + 2.0) / ((d + 2.0) * (d + 2.0)))
    m = q > 1e-130
    out[m] = n[m] / w[m]
    if np.isscalar(q_in) or getattr(q_in, "ndim", 1) == 0:
        return float(out[0])
    return out


def kernel(q: float, d: float) -> KernelValue:
    """Force kernel K(q, d) = |C|^2 + |D|^2 - 1; q = 0 returns the
    long-wavelength limit 2/(d+2)^2 - 1."""
    _check_qd(q, d, allow_zero_q=True)
    return KernelValue(value=-flux_deficit(float(q), float(d)), q=float(q), d=float(d))

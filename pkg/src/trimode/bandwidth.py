"""Gain-bandwidth analytics and a numeric FWHM extractor.

The diagonal scattering elements behave as 1/D(omega) with D a cubic whose
coefficients are simple polynomials in the cooperativities and modulation
depths.  Near the gain pole (xi_d = 0, xi_m -> xi_m_max) the constant term
of the cubic vanishes and the bandwidth collapses to a ratio of the
remaining coefficients; two further rearrangements express it through the
on-resonance gain.  All three closed forms carry approximation signs, so
the executable ground truth here is a direct numeric full width at half
maximum of the gain curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplifier import gain_on_resonance, gain_spectrum, scattering_matrix
from .errors import BandwidthUndefinedError
from .params import DimensionlessParams
from .response import susceptibility_closed


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of D(omega) = i omega^3 + a omega^2 + b omega + c.

    Units: a in gamma_m, b in gamma_m^2, c in gamma_m^3 (for rates given
    in units of gamma_m).
    """

    a: float
    b: float
    c: float


def cubic_coefficients(d: DimensionlessParams) -> CubicCoeffs:
    """Evaluate the cubic-denominator coefficients.

        -2a = kappa + gamma_m (1 - xi_m) + gamma_d (1 - xi_d)
         4b = kappa gamma_m (C0 + 1 - xi_m) + kappa gamma_d (C1 + 1 - xi_d)
              + gamma_m gamma_d xi_m xi_d
         8c = kappa gamma_m gamma_d [ C0 (1 - xi_d) + C1 (1 - xi_m)
              + (1 - xi_m)(1 - xi_d) ]

    The bracket in c is the shared on-resonance gain denominator, so c
    vanishes exactly at the gain pole; in particular at xi_d = 0,
    xi_m = 1 + C0/(1 + C1).
    """
    a = -0.5 * (d.kappa + d.gamma_m * (1.0 - d.xi_m) + d.gamma_d * (1.0 - d.xi_d))
    b = 0.25 * (
        d.kappa * d.gamma_m * (d.c0 + 1.0 - d.xi_m)
        + d.kappa * d.gamma_d * (d.c1 + 1.0 - d.xi_d)
        + d.gamma_m * d.gamma_d * d.xi_m * d.xi_d
    )
    c = (
        d.kappa
        * d.gamma_m
        * d.gamma_d
        / 8.0
        * (
            d.c0 * (1.0 - d.xi_d)
            + d.c1 * (1.0 - d.xi_m)
            + (1.0 - d.xi_m) * (1.0 - d.xi_d)
        )
    )
    return CubicCoeffs(a=a, b=b, c=c)


@dataclass(frozen=True)
class AnalyticBandwidth:
    """The three closed-form bandwidth estimates and their validity flags.

    ``delta_omega_cubic`` is the coefficient ratio -2b/a, valid once the
    constant term of the cubic is negligible.  ``delta_omega_gain`` recasts
    it through the on-resonance gain; ``delta_omega_weak`` is its weak
    coupling simplification

        (8 g^2 / kappa) [ 1/sqrt(G_a) + (C1/2C0)(xi_m - 1)
                          + (gamma_d/gamma_m)(1 + C1)/(2 C0) ].

    The flags record whether the parameter point sits in the regime the
    estimates were made for; outside it they can disagree arbitrarily.
    """

    delta_omega_cubic: float
    delta_omega_gain: float
    delta_omega_weak: float
    xi_d_small: bool
    large_gain: bool
    weak_coupling: bool


def gain_bandwidth_analytic(d: DimensionlessParams) -> AnalyticBandwidth:
    """Closed-form optical gain-bandwidth estimates.

    Raises :class:`BandwidthUndefinedError` when the on-resonance amplitude
    gain is zero (nothing to halve) or the quadratic coefficient vanishes.
    The two gain-referenced estimates are ``nan`` at C0 = 0, where the
    optical peak has no mechanically induced component to track.
    """
    coeffs = cubic_coefficients(d)
    if coeffs.a == 0.0:
        raise BandwidthUndefinedError("quadratic coefficient vanishes")
    dw_cubic = -2.0 * coeffs.b / coeffs.a

    sqrt_gain = gain_on_resonance(d).sqrt_gain_a
    if sqrt_gain == 0.0:
        raise BandwidthUndefinedError("on-resonance gain is zero")

    if d.c0 > 0.0 and math.isfinite(sqrt_gain):
        base = 2.0 * d.c0 * d.gamma_m
        numer = 1.0 - (sqrt_gain / (2.0 * d.c0)) * (
            d.c1 * (1.0 - d.xi_m) - (d.gamma_d / d.gamma_m) * (1.0 + d.c1)
        )
        denom = 1.0 - (d.gamma_m / d.kappa) * (d.c0 + d.c1 * (1.0 - d.xi_m))
        dw_gain = base / sqrt_gain * numer / denom
        dw_weak = base * (
            1.0 / sqrt_gain
            + (d.c1 / (2.0 * d.c0)) * (d.xi_m - 1.0)
            + (d.gamma_d / d.gamma_m) * (1.0 + d.c1) / (2.0 * d.c0)
        )
    else:
        dw_gain = math.nan
        dw_weak = math.nan

    return AnalyticBandwidth(
        delta_omega_cubic=dw_cubic,
        delta_omega_gain=dw_gain,
        delta_omega_weak=dw_weak,
        xi_d_small=d.xi_d <= 1e-3,
        large_gain=abs(sqrt_gain) >= 10.0,
        weak_coupling=d.g < d.kappa / 10.0 and d.G < d.kappa / 10.0,
    )


def fwhm_numeric(
    d: DimensionlessParams,
    mode: str = "optical",
    *,
    window: float = 10.0,
    points: int = 4096,
    rel_tol: float = 1e-10,
) -> float:
    """Full width at half maximum of the gain curve about omega = 0.

    The half level is taken between the resonance value and the flat
    high-frequency baseline of 1, so dips below unity are measured the same
    way as peaks.  Scans a log-spaced grid up to ``window * kappa``, then
    bisects the first crossing to `rel_tol` relative accuracy; the width is
    twice the crossing frequency (the gain is even in omega).

    Raises :class:`BandwidthUndefinedError` for a flat response or when no
    crossing lies inside the scan window.
    """
    gain0 = float(_gain_at(d, mode, np.array(0.0)))
    if abs(gain0 - 1.0) < 1e-9:
        raise BandwidthUndefinedError(
            "gain is flat at the vacuum baseline; no half-maximum crossing"
        )
    level = 0.5 * (gain0 + 1.0)
    falling = gain0 > 1.0

    lo = 1e-8 * min(d.kappa, d.gamma_m, d.gamma_d)
    hi = window * d.kappa
    grid = np.geomspace(lo, hi, points)
    gains = _gain_at(d, mode, grid)
    crossed = gains <= level if falling else gains >= level
    hits = np.flatnonzero(crossed)
    if hits.size == 0:
        raise BandwidthUndefinedError(
            "no half-maximum crossing within the scan window"
        )
    idx = int(hits[0])
    left = 0.0 if idx == 0 else float(grid[idx - 1])
    right = float(grid[idx])

    while right - left > rel_tol * right:
        mid = 0.5 * (left + right)
        g_mid = float(_gain_at(d, mode, np.array(mid)))
        beyond = g_mid <= level if falling else g_mid >= level
        if beyond:
            right = mid
        else:
            left = mid
    return left + right


def _gain_at(d: DimensionlessParams, mode: str, omega: np.ndarray) -> np.ndarray:
    chi = susceptibility_closed(d, omega)
    return gain_spectrum(scattering_matrix(chi, d), mode)


@dataclass(frozen=True)
class BandwidthResult:
    """Analytic estimate next to the numeric ground truth."""

    delta_omega_analytic: float
    delta_omega_numeric: float
    xi_d_small: bool
    large_gain: bool
    weak_coupling: bool


def bandwidth_result(d: DimensionlessParams, mode: str = "optical") -> BandwidthResult:
    """Weak-coupling analytic estimate paired with the numeric FWHM."""
    analytic = gain_bandwidth_analytic(d)
    numeric = fwhm_numeric(d, mode)
    return BandwidthResult(
        delta_omega_analytic=analytic.delta_omega_weak,
        delta_omega_numeric=numeric,
        xi_d_small=analytic.xi_d_small,
        large_gain=analytic.large_gain,
        weak_coupling=analytic.weak_coupling,
    )

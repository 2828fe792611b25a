"""Squeezing spectra of the complementary quadratures, purity, and limits.

The quadratures complementary to the amplified ones, (X_a, P_b, P_d), are
squeezed below the vacuum level when the modulations are on.  This module
evaluates their output spectra on a frequency grid and on resonance, the
cross-correlations needed for the purity measure, and the closed-form
squeezing limits reached for specially tuned modulation depths.

Conventions: spectra are symmetrized and normalized so vacuum inputs give
1/2; the squeezing figure in decibel is -10 log10(2 S) (positive when
squeezed below vacuum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .amplifier import (
    SQUEEZED_QUADRATURE_INDEX,
    _check_mode,
    _input_weights,
    _output_row_spectrum,
    scattering_matrix,
)
from .errors import SingularConfigError, UnphysicalSpectraError
from .params import DimensionlessParams


def squeezing_db(spectrum: NDArray[np.float64] | float) -> NDArray[np.float64] | float:
    """Squeezing in decibel, ``-10 log10(2 S)``; 0 dB is vacuum."""
    return -10.0 * np.log10(2.0 * np.asarray(spectrum))


def squeezing_spectrum(
    chi: NDArray[np.complex128], d: DimensionlessParams, mode: str
) -> NDArray[np.float64]:
    """Symmetrized output spectrum of one mode's squeezed quadrature.

    Full output-row sum over the three input channels, e.g. for the
    optical X quadrature

        S_XX,a(omega) = (n_a + 1/2) |1 - kappa chi_11|^2
                      + (n_m + 1/2) kappa gamma_m |chi_14|^2
                      + (n_d + 1/2) kappa gamma_d |chi_16|^2

    (indices 1-based into the quadrature vector).  Values below 1/2 mean
    squeezing.
    """
    _check_mode(mode)
    s = scattering_matrix(chi, d)
    r = SQUEEZED_QUADRATURE_INDEX[mode] - 1
    return _output_row_spectrum(s, r, _input_weights(d))


@dataclass(frozen=True)
class EtaFactors:
    """The five polynomial factors entering the on-resonance spectra.

    ``eta_a`` controls the optical vacuum contribution (squeezing of the
    output field improves as eta_a approaches 2); ``eta_m``/``eta_d`` are
    the matter-mode numerator factors whose zeros mark perfect squeezing;
    ``s_m``/``s_d`` the corresponding denominators.
    """

    eta_a: float
    eta_m: float
    eta_d: float
    s_m: float
    s_d: float


def eta_s_factors(d: DimensionlessParams) -> EtaFactors:
    """Evaluate the on-resonance factors.

        eta_a = 1 + C0/(1 + xi_m) + C1/(1 + xi_d)
        eta_m = C0 + xi_m - 1 + C1 (xi_m - 1)/(1 + xi_d)
        s_m   = C0 + 1 + xi_m + C1 (1 + xi_m)/(1 + xi_d)

    with the Bogoliubov pair obtained by swapping (C0, xi_m) <-> (C1, xi_d).
    Always finite since the modulation depths are non-negative.
    """
    eta_a = 1.0 + d.c0 / (1.0 + d.xi_m) + d.c1 / (1.0 + d.xi_d)
    eta_m = d.c0 + d.xi_m - 1.0 + d.c1 * (d.xi_m - 1.0) / (1.0 + d.xi_d)
    eta_d = d.c1 + d.xi_d - 1.0 + d.c0 * (d.xi_d - 1.0) / (1.0 + d.xi_m)
    s_m = d.c0 + 1.0 + d.xi_m + d.c1 * (1.0 + d.xi_m) / (1.0 + d.xi_d)
    s_d = d.c1 + 1.0 + d.xi_d + d.c0 * (1.0 + d.xi_d) / (1.0 + d.xi_m)
    return EtaFactors(eta_a=eta_a, eta_m=eta_m, eta_d=eta_d, s_m=s_m, s_d=s_d)


def squeezing_on_resonance(d: DimensionlessParams) -> tuple[float, float, float]:
    """Closed-form squeezed-quadrature spectra at omega = 0.

    Returns (S_XX,a(0), S_PP,m(0), S_PP,d(0)).  In units of the vacuum
    level these read

        2 S_XX,a(0) = (1 + 2 n_a)(1 - 2/eta_a)^2
                    + (1 + 2 n_m) 4 C0 / [(1 + xi_m)^2 eta_a^2]
                    + (1 + 2 n_d) 4 C1 / [(1 + xi_d)^2 eta_a^2]

        2 S_PP,m(0) = [ (1 + 2 n_m) eta_m^2 + 4 C0 (1 + 2 n_a)
                      + 4 C0 C1 (1 + 2 n_d) / (1 + xi_d)^2 ] / s_m^2

    and the Bogoliubov expression is the exact mirror of the mechanical one
    under (C0, xi_m, n_m) <-> (C1, xi_d, n_d); the mirrored form is what the
    zero-frequency limit of :func:`squeezing_spectrum` reproduces.
    """
    f = eta_s_factors(d)
    if f.eta_a == 0.0 or f.s_m == 0.0 or f.s_d == 0.0:
        raise SingularConfigError(
            "on-resonance squeezing denominator vanishes "
            f"(eta_a={f.eta_a}, s_m={f.s_m}, s_d={f.s_d})"
        )
    wa = 1.0 + 2.0 * d.nbar_a
    wm = 1.0 + 2.0 * d.nbar_m
    wd = 1.0 + 2.0 * d.nbar_d

    two_s_a = (
        wa * (1.0 - 2.0 / f.eta_a) ** 2
        + wm * 4.0 * d.c0 / ((1.0 + d.xi_m) ** 2 * f.eta_a**2)
        + wd * 4.0 * d.c1 / ((1.0 + d.xi_d) ** 2 * f.eta_a**2)
    )
    two_s_m = (
        wm * f.eta_m**2
        + 4.0 * d.c0 * wa
        + 4.0 * d.c0 * d.c1 * wd / (1.0 + d.xi_d) ** 2
    ) / f.s_m**2
    two_s_d = (
        wd * f.eta_d**2
        + 4.0 * d.c1 * wa
        + 4.0 * d.c1 * d.c0 * wm / (1.0 + d.xi_m) ** 2
    ) / f.s_d**2
    return (0.5 * two_s_a, 0.5 * two_s_m, 0.5 * two_s_d)


def cross_correlation_spectrum(
    chi: NDArray[np.complex128], d: DimensionlessParams, mode: str
) -> NDArray[np.float64]:
    """Symmetrized X-P cross-correlation spectrum of one output mode.

    For each input channel the X-row and P-row scattering elements pair up
    as

        S_XP(omega) = -1/2 Im sum_k [ s_Xj,Xk s_Pj,Pk^* + s_Pj,Xk s_Xj,Pk^* ]

    (one product of each pair vanishes identically because the dynamics
    decouple into two quadrature triples).  The result is real, independent
    of the thermal occupancies, odd in frequency, and zero on resonance
    where the susceptibility is real.
    """
    _check_mode(mode)
    s = scattering_matrix(chi, d)
    x = 2 * ("optical", "mech", "bog").index(mode)
    p = x + 1
    total = np.zeros(s.shape[:-2], dtype=complex)
    for k in (0, 2, 4):
        total = total + s[..., x, k] * np.conj(s[..., p, k + 1])
        total = total + s[..., p, k] * np.conj(s[..., x, k + 1])
    return -0.5 * np.imag(total)


def purity(
    s_xx: NDArray[np.float64] | float,
    s_pp: NDArray[np.float64] | float,
    s_xp: NDArray[np.float64] | float,
    s_px: NDArray[np.float64] | float,
) -> NDArray[np.float64] | float:
    """Effective thermal occupancy of the output state at one frequency.

        n_eff = sqrt(S_XX S_PP - S_XP S_PX) - 1/2

    Zero for a pure state, n for a thermal state of occupancy n.  The
    discriminant must be non-negative; values below a small numerical
    tolerance raise :class:`UnphysicalSpectraError` because no physical
    spectra can produce them.
    """
    disc = np.asarray(s_xx) * np.asarray(s_pp) - np.asarray(s_xp) * np.asarray(s_px)
    tol = 1e-9 * (1.0 + np.abs(disc))
    if np.any(disc < -tol):
        raise UnphysicalSpectraError(
            "negative purity discriminant; spectra violate the uncertainty bound"
        )
    n_eff = np.sqrt(np.clip(disc, 0.0, None)) - 0.5
    if np.ndim(n_eff) == 0:
        return float(n_eff)
    return n_eff


@dataclass(frozen=True)
class AsymptoticLimits:
    """Closed-form squeezing limits and where they apply.

    Each limit is the on-resonance squeezed spectrum (vacuum = 1/2) reached
    at a specially tuned modulation depth; ``nan`` with the matching
    ``*_applicable`` flag cleared when the tuning precondition fails.

    cavity_limit:
        Output-field limit (1 - C1)^2 (1 + 2 n_m)/(2 C0) + C1 (1 + 2 n_d)/2,
        reached at xi_d = 0, xi_m = xi_m_sq_a (needs C1 < 1 and C0 + C1 >= 1).
    mech_case_i:
        Mechanical limit C0 (1 + 2 n_a)/(2 C1^2) + C0 (1 + 2 n_d)/(2 C1) at
        xi_d = 0, xi_m = case_i_xi_m (needs C1 > 0 and C1 >= C0 - 1).
    mech_case_ii:
        Mechanical limit (1 + 2 n_a)/(2 C0) + (C0 - 1)(1 + 2 n_d)/(2 C1) at
        xi_m = 0, xi_d = case_ii_xi_d (needs C0 > 1 and C1 > C0 - 1).
    """

    cavity_limit: float
    mech_case_i: float
    mech_case_ii: float
    xi_m_sq_a: float
    case_i_xi_m: float
    case_ii_xi_d: float
    cavity_applicable: bool
    case_i_applicable: bool
    case_ii_applicable: bool


def asymptotic_limits(d: DimensionlessParams) -> AsymptoticLimits:
    """Evaluate the closed-form squeezing limits for the given cooperativities.

    Only C0, C1 and the occupancies of `d` enter; the modulation depths at
    which each limit holds are returned alongside the values.  Note that
    ``xi_m_sq_a`` can exceed the stability ceiling once C0 C1 > 1 - C1^2;
    the limit value is still reported (it is a property of the closed form)
    and the caller decides whether the operating point is reachable.
    """
    wa = 1.0 + 2.0 * d.nbar_a
    wm = 1.0 + 2.0 * d.nbar_m
    wd = 1.0 + 2.0 * d.nbar_d

    cavity_ok = d.c1 < 1.0 and d.c0 + d.c1 >= 1.0
    if cavity_ok:
        xi_m_sq_a = (d.c0 + d.c1 - 1.0) / (1.0 - d.c1)
        cavity = 0.5 * ((1.0 - d.c1) ** 2 * wm / d.c0 + d.c1 * wd)
    else:
        xi_m_sq_a = math.nan
        cavity = math.nan

    case_i_ok = d.c1 > 0.0 and d.c1 >= d.c0 - 1.0
    if case_i_ok:
        case_i_xi_m = 1.0 - d.c0 / (1.0 + d.c1)
        case_i = 0.5 * (d.c0 * wa / d.c1**2 + d.c0 * wd / d.c1)
    else:
        case_i_xi_m = math.nan
        case_i = math.nan

    case_ii_ok = d.c0 > 1.0 and d.c1 > d.c0 - 1.0
    if case_ii_ok:
        case_ii_xi_d = (d.c1 + 1.0 - d.c0) / (d.c0 - 1.0)
        case_ii = 0.5 * (wa / d.c0 + (d.c0 - 1.0) * wd / d.c1)
    else:
        case_ii_xi_d = math.nan
        case_ii = math.nan

    return AsymptoticLimits(
        cavity_limit=cavity,
        mech_case_i=case_i,
        mech_case_ii=case_ii,
        xi_m_sq_a=xi_m_sq_a,
        case_i_xi_m=case_i_xi_m,
        case_ii_xi_d=case_ii_xi_d,
        cavity_applicable=cavity_ok,
        case_i_applicable=case_i_ok,
        case_ii_applicable=case_ii_ok,
    )


def purity_on_resonance(d: DimensionlessParams) -> tuple[float, float, float]:
    """Effective thermal occupancies of the three output modes at omega = 0.

    The cross-correlations vanish on resonance, so each n_eff pairs the
    closed-form squeezed spectrum with the closed-form amplified one.
    ``math.inf`` at the gain pole, where the amplified spectra diverge.
    """
    from .amplifier import amplified_on_resonance

    squeezed = squeezing_on_resonance(d)
    amplified = amplified_on_resonance(d)
    out = []
    for s_sq, s_amp in zip(squeezed, amplified):
        if math.isinf(s_amp):
            out.append(math.inf)
        else:
            out.append(float(purity(s_sq, s_amp, 0.0, 0.0)))
    return (out[0], out[1], out[2])


@dataclass(frozen=True)
class SqueezePoint:
    """Squeezed-quadrature observables of one mode at one frequency."""

    mode: str
    omega: float
    output_spectrum: float
    squeezing_db: float
    cross_corr: float
    n_eff: float


def squeeze_point(
    chi: NDArray[np.complex128], d: DimensionlessParams, mode: str, omega: float
) -> SqueezePoint:
    """Bundle spectrum, squeezing level, cross-correlation and purity.

    `chi` must be the susceptibility evaluated at exactly `omega`
    (shape (6, 6)).  The purity pairs the squeezed spectrum with the
    complementary amplified one; the two cross-correlations coincide.
    """
    from .amplifier import amplified_spectrum

    s_sq = float(squeezing_spectrum(chi, d, mode))
    s_amp = float(amplified_spectrum(chi, d, mode))
    s_xp = float(cross_correlation_spectrum(chi, d, mode))
    n_eff = float(purity(s_sq, s_amp, s_xp, s_xp))
    return SqueezePoint(
        mode=mode,
        omega=omega,
        output_spectrum=s_sq,
        squeezing_db=float(squeezing_db(s_sq)),
        cross_corr=s_xp,
        n_eff=n_eff,
    )

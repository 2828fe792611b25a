"""Phase-sensitive gain and added noise of the three output channels.

Each mode amplifies one quadrature and squeezes the complementary one.
The amplified quadratures are (P_a, X_b, X_d); everything in this module
is phrased in terms of the output scattering matrix

    s(omega) = 1 - sqrt(Gamma) chi(omega) sqrt(Gamma),

whose diagonal entries give the gains and whose off-diagonal entries feed
the added noise.  On resonance the gains reduce to ratios of two bilinear
polynomials in the cooperativities, which are exposed separately so that
poles and zeros can be located without touching the frequency grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np
from numpy.typing import NDArray

from .errors import UndefinedAddedNoiseError
from .params import DimensionlessParams

#: Quadrature picked out by the amplifier for each mode, as a 1-based index
#: into the vector (X_a, P_a, X_b, P_b, X_d, P_d).
AMPLIFIED_QUADRATURE_INDEX = MappingProxyType({"optical": 2, "mech": 3, "bog": 5})

#: Complementary (squeezed) quadrature for each mode, 1-based as above.
SQUEEZED_QUADRATURE_INDEX = MappingProxyType({"optical": 1, "mech": 4, "bog": 6})

_MODES = ("optical", "mech", "bog")


def _check_mode(mode: str) -> None:
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_MODES}")


def _rates(d: DimensionlessParams) -> NDArray[np.float64]:
    return np.array(
        [d.kappa, d.kappa, d.gamma_m, d.gamma_m, d.gamma_d, d.gamma_d]
    )


def scattering_matrix(
    chi: NDArray[np.complex128], d: DimensionlessParams
) -> NDArray[np.complex128]:
    """Input-output scattering matrix ``1 - sqrt(Gamma) chi sqrt(Gamma)``.

    Parameters
    ----------
    chi:
        Susceptibility array of shape (..., 6, 6).
    d:
        Parameter set supplying the decay rates on the diagonal of Gamma.

    Returns
    -------
    Complex array, same shape as `chi`.
    """
    root = np.sqrt(_rates(d))
    return np.eye(6) - root[:, None] * root[None, :] * chi


def gain_spectrum(s: NDArray[np.complex128], mode: str) -> NDArray[np.float64]:
    """Phase-sensitive gain ``|s_jj(omega)|^2`` of one mode's amplified quadrature.

    `s` is a scattering array of shape (..., 6, 6) as returned by
    :func:`scattering_matrix`.
    """
    _check_mode(mode)
    j = AMPLIFIED_QUADRATURE_INDEX[mode] - 1
    return np.abs(s[..., j, j]) ** 2


def gain_db(gain: NDArray[np.float64] | float) -> NDArray[np.float64] | float:
    """Gain in decibel, ``10 log10(G)`` (power convention)."""
    return 10.0 * np.log10(gain)


@dataclass(frozen=True)
class OnResonanceGain:
    """Signed square-root gains at omega = 0 and the poles/zeros in xi_m.

    ``sqrt_gain_*`` are the ratios Q/P of the numerator and denominator
    polynomials; squaring gives the gain.  A vanishing denominator is
    reported as ``math.inf`` rather than raising, so sweeps can record the
    divergence explicitly.  ``q_*``/``p_*`` hold the two polynomials exactly
    as displayed (they share the common factor (1 - xi_d), resp. (1 - xi_m),
    which cancels in the ratio).

    ``xi_m_divergent`` is the modulation depth where the shared denominator
    crosses zero (gain pole), ``xi_m_zero`` where the optical numerator does
    (gain null).
    """

    sqrt_gain_a: float
    sqrt_gain_m: float
    sqrt_gain_d: float
    q_a: float
    p_a: float
    q_m: float
    p_m: float
    q_d: float
    p_d: float
    xi_m_divergent: float
    xi_m_zero: float

    @property
    def gain_a(self) -> float:
        return self.sqrt_gain_a**2

    @property
    def gain_m(self) -> float:
        return self.sqrt_gain_m**2

    @property
    def gain_d(self) -> float:
        return self.sqrt_gain_d**2

    @property
    def divergent(self) -> bool:
        return math.isinf(self.sqrt_gain_a)


def _cleared_polynomials(
    d: DimensionlessParams,
) -> tuple[float, float, float, float]:
    """Common-factor-free numerators (optical, mech, bog) and shared denominator.

    The displayed on-resonance ratios have the shape Q_a / P_a with
    P_a = C0 + (1 - xi_m) + C1 (1 - xi_m)/(1 - xi_d) and mirror images for
    the matter modes.  Multiplying numerator and denominator of the optical
    and mechanical ratios by (1 - xi_d), and of the Bogoliubov ratio by
    (1 - xi_m), leaves every ratio intact and produces a single polynomial
    denominator

        P = C0 (1 - xi_d) + C1 (1 - xi_m) + (1 - xi_m)(1 - xi_d)

    shared by all three modes, finite for every parameter value.
    """
    u = 1.0 - d.xi_m
    v = 1.0 - d.xi_d
    p_shared = d.c0 * v + d.c1 * u + u * v
    q_a = d.c0 * v - u * v + d.c1 * u
    q_m = d.c0 * v - (1.0 + d.xi_m) * v - d.c1 * (1.0 + d.xi_m)
    q_d = d.c1 * u - (1.0 + d.xi_d) * u - d.c0 * (1.0 + d.xi_d)
    return q_a, q_m, q_d, p_shared


def _verbatim_ratio(num: float, den: float) -> float:
    if den == 0.0:
        if num == 0.0:
            return math.nan
        return math.copysign(math.inf, num)
    return num / den


def gain_on_resonance(d: DimensionlessParams) -> OnResonanceGain:
    """Closed-form gains at omega = 0.

    The three square-root gains are

        sqrt(G_a) = [C0 - (1 - xi_m) + C1 (1 - xi_m)/(1 - xi_d)] / P_a
        sqrt(G_m) = [C0 - (1 + xi_m) - C1 (1 + xi_m)/(1 - xi_d)] / P_a
        sqrt(G_d) = [C1 - (1 + xi_d) - C0 (1 + xi_d)/(1 - xi_m)] / P_d

    with P_a = C0 + (1 - xi_m) + C1 (1 - xi_m)/(1 - xi_d) and
    P_d = C1 + (1 - xi_d) + C0 (1 - xi_d)/(1 - xi_m).  They are evaluated
    through the cleared polynomials of :func:`_cleared_polynomials`, which
    agree with the displayed ratios wherever those are finite and remain
    well defined at xi_d = 1 or xi_m = 1.
    """
    q_a, q_m, q_d, p_shared = _cleared_polynomials(d)
    if p_shared == 0.0:
        sqrt_a = math.inf if q_a != 0.0 else math.nan
        sqrt_m = math.inf if q_m != 0.0 else math.nan
        sqrt_d = math.inf if q_d != 0.0 else math.nan
    else:
        sqrt_a = q_a / p_shared
        sqrt_m = q_m / p_shared
        sqrt_d = q_d / p_shared

    u = 1.0 - d.xi_m
    v = 1.0 - d.xi_d
    ratio_mv = _verbatim_ratio(d.c1 * u, v)
    p_a_verbatim = d.c0 + u + ratio_mv
    q_a_verbatim = d.c0 - u + ratio_mv
    q_m_verbatim = d.c0 - (1.0 + d.xi_m) - _verbatim_ratio(d.c1 * (1.0 + d.xi_m), v)
    p_d_verbatim = d.c1 + v + _verbatim_ratio(d.c0 * v, u)
    q_d_verbatim = d.c1 - (1.0 + d.xi_d) - _verbatim_ratio(d.c0 * (1.0 + d.xi_d), u)

    xi_m_divergent = 1.0 + _verbatim_ratio(d.c0 * v, d.c1 + v)
    xi_m_zero = 1.0 + _verbatim_ratio(d.c0 * v, d.c1 - v)

    return OnResonanceGain(
        sqrt_gain_a=sqrt_a,
        sqrt_gain_m=sqrt_m,
        sqrt_gain_d=sqrt_d,
        q_a=q_a_verbatim,
        p_a=p_a_verbatim,
        q_m=q_m_verbatim,
        p_m=p_a_verbatim,
        q_d=q_d_verbatim,
        p_d=p_d_verbatim,
        xi_m_divergent=xi_m_divergent,
        xi_m_zero=xi_m_zero,
    )


def added_noise_spectrum(
    chi: NDArray[np.complex128], d: DimensionlessParams, mode: str
) -> NDArray[np.float64]:
    """Added noise quanta referred to the input of one amplified quadrature.

    For the optical mode this is

        n_add,a(omega) = kappa / G_a(omega) * [ (n_m + 1/2) gamma_m |chi_23|^2
                                              + (n_d + 1/2) gamma_d |chi_25|^2 ]

    and cyclic analogues for the matter modes (indices 1-based into the
    quadrature vector).  Raises :class:`UndefinedAddedNoiseError` wherever
    the gain vanishes, since "noise referred to the input" has no meaning
    through a channel with zero transmission.
    """
    _check_mode(mode)
    s = scattering_matrix(chi, d)
    gain = gain_spectrum(s, mode)
    if np.any(gain == 0.0):
        raise UndefinedAddedNoiseError(
            f"gain of mode {mode!r} vanishes on the requested grid"
        )
    half = 0.5
    if mode == "optical":
        cross = d.kappa * (
            (d.nbar_m + half) * d.gamma_m * np.abs(chi[..., 1, 2]) ** 2
            + (d.nbar_d + half) * d.gamma_d * np.abs(chi[..., 1, 4]) ** 2
        )
    elif mode == "mech":
        cross = d.gamma_m * (
            (d.nbar_a + half) * d.kappa * np.abs(chi[..., 2, 1]) ** 2
            + (d.nbar_d + half) * d.gamma_d * np.abs(chi[..., 2, 4]) ** 2
        )
    else:
        cross = d.gamma_d * (
            (d.nbar_a + half) * d.kappa * np.abs(chi[..., 4, 1]) ** 2
            + (d.nbar_m + half) * d.gamma_m * np.abs(chi[..., 4, 2]) ** 2
        )
    return cross / gain


def added_noise_on_resonance(d: DimensionlessParams) -> tuple[float, float, float]:
    """Added noise of the three modes at omega = 0, in closed form.

    Evaluated through the cleared polynomials so that the expressions stay
    finite at xi_d = 1 (optical/mech) and xi_m = 1 (bog); where the numerator
    polynomial Q vanishes the gain is zero and the added noise diverges,
    reported as ``math.inf``.
    """
    q_a, q_m, q_d, _ = _cleared_polynomials(d)
    u = 1.0 - d.xi_m
    v = 1.0 - d.xi_d
    half = 0.5

    num_a = 4.0 * ((d.nbar_m + half) * d.c0 * v**2 + (d.nbar_d + half) * d.c1 * u**2)
    num_m = 4.0 * d.c0 * ((d.nbar_a + half) * v**2 + (d.nbar_d + half) * d.c1)
    num_d = 4.0 * d.c1 * ((d.nbar_a + half) * u**2 + (d.nbar_m + half) * d.c0)

    def _over_square(num: float, q: float) -> float:
        if q == 0.0:
            return math.inf if num != 0.0 else 0.0
        return num / q**2

    return (
        _over_square(num_a, q_a),
        _over_square(num_m, q_m),
        _over_square(num_d, q_d),
    )


def amplified_on_resonance(d: DimensionlessParams) -> tuple[float, float, float]:
    """Amplified-quadrature output spectra at omega = 0, in closed form.

    Equal to gain * [(n + 1/2) + n_add] but assembled from the cleared
    polynomials so that gain zeros (where the added noise diverges) still
    give the correct finite spectrum.  ``math.inf`` at the gain pole.
    """
    q_a, q_m, q_d, p = _cleared_polynomials(d)
    u = 1.0 - d.xi_m
    v = 1.0 - d.xi_d
    half = 0.5
    num_a = (d.nbar_a + half) * q_a**2 + 4.0 * (
        (d.nbar_m + half) * d.c0 * v**2 + (d.nbar_d + half) * d.c1 * u**2
    )
    num_m = (d.nbar_m + half) * q_m**2 + 4.0 * d.c0 * (
        (d.nbar_a + half) * v**2 + (d.nbar_d + half) * d.c1
    )
    num_d = (d.nbar_d + half) * q_d**2 + 4.0 * d.c1 * (
        (d.nbar_a + half) * u**2 + (d.nbar_m + half) * d.c0
    )
    if p == 0.0:
        return (math.inf, math.inf, math.inf)
    return (num_a / p**2, num_m / p**2, num_d / p**2)


def amplified_spectrum(
    chi: NDArray[np.complex128], d: DimensionlessParams, mode: str
) -> NDArray[np.float64]:
    """Symmetrized output spectrum of one mode's amplified quadrature.

    Computed as the full output-row sum, e.g. for the optical P quadrature

        S_PP,a(omega) = (n_a + 1/2) |1 - kappa chi_22|^2
                      + (n_m + 1/2) kappa gamma_m |chi_23|^2
                      + (n_d + 1/2) kappa gamma_d |chi_25|^2,

    which equals G(omega) [ (n + 1/2) + n_add(omega) ] wherever the added
    noise is defined, but stays finite at gain zeros.  Vacuum inputs give
    the value 1/2 in the large-frequency limit.
    """
    _check_mode(mode)
    s = scattering_matrix(chi, d)
    r = AMPLIFIED_QUADRATURE_INDEX[mode] - 1
    weights = _input_weights(d)
    return _output_row_spectrum(s, r, weights)


def _input_weights(d: DimensionlessParams) -> NDArray[np.float64]:
    """Per-quadrature input noise weights (n + 1/2), ordered like the state vector."""
    return np.array(
        [
            d.nbar_a + 0.5,
            d.nbar_a + 0.5,
            d.nbar_m + 0.5,
            d.nbar_m + 0.5,
            d.nbar_d + 0.5,
            d.nbar_d + 0.5,
        ]
    )


def _output_row_spectrum(
    s: NDArray[np.complex128], row: int, weights: NDArray[np.float64]
) -> NDArray[np.float64]:
    return np.sum(weights * np.abs(s[..., row, :]) ** 2, axis=-1)


@dataclass(frozen=True)
class AmplifierPoint:
    """Gain, added noise and output spectrum of one mode at one frequency."""

    mode: str
    omega: float
    gain: float
    added_noise: float
    output_spectrum: float


def amplifier_point(
    chi: NDArray[np.complex128], d: DimensionlessParams, mode: str, omega: float
) -> AmplifierPoint:
    """Bundle the single-frequency amplifier observables of one mode.

    `chi` must be the susceptibility evaluated at exactly `omega`
    (shape (6, 6)); the frequency is carried along for labeling only.
    """
    gain = float(gain_spectrum(scattering_matrix(chi, d), mode))
    added = float(added_noise_spectrum(chi, d, mode))
    out = float(amplified_spectrum(chi, d, mode))
    return AmplifierPoint(
        mode=mode, omega=omega, gain=gain, added_noise=added, output_spectrum=out
    )

"""Drift matrix, stability, susceptibility and steady-state covariance.

The linearized quadrature dynamics is ``du/dt = A u + noise`` with the vector
ordered ``(X_a, P_a, X_b, P_b, X_d, P_d)`` for the cavity field, the mirror
and the condensate Bogoliubov mode.  Fourier convention: ``-i w u(w) =
A u(w) + u_in(w)``, so the susceptibility is ``chi(w) = (-i w I - A)^-1``.

``chi`` is computed by two deliberately independent routes: a numeric
resolvent solve and closed-form block expressions.  Tests hold the two equal
to relative 1e-9; neither route is allowed to call the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import NoSteadyStateError, PoleError
from .params import DimensionlessParams, validate_stability_inputs

__all__ = [
    "StabilityReport",
    "build_drift",
    "stability_eigen",
    "susceptibility_numeric",
    "susceptibility_closed",
    "induced_paramp_a",
    "diffusion_matrix",
    "steady_state_covariance",
    "symplectic_form",
]

_IDENTITY = np.eye(6)


def build_drift(d: DimensionlessParams) -> NDArray[np.float64]:
    """Assemble the 6x6 real drift matrix.

    Couplings ``g``, ``G`` and modulation amplitudes ``lam_m``, ``lam_d``
    are reconstructed from the cooperativities and ``xi`` values.  The
    X-quadrature of each modulated mode is anti-damped by ``+lam`` and the
    P-quadrature damped by ``-lam``.
    """
    g, G = d.g, d.G
    lam_m, lam_d = d.lam_m, d.lam_d
    half_kappa = d.kappa / 2.0
    half_gm = d.gamma_m / 2.0
    half_gd = d.gamma_d / 2.0
    return np.array(
        [
            [-half_kappa, 0.0, 0.0, -g, 0.0, G],
            [0.0, -half_kappa, g, 0.0, -G, 0.0],
            [0.0, -g, lam_m - half_gm, 0.0, 0.0, 0.0],
            [g, 0.0, 0.0, -(lam_m + half_gm), 0.0, 0.0],
            [0.0, G, 0.0, 0.0, lam_d - half_gd, 0.0],
            [-G, 0.0, 0.0, 0.0, 0.0, -(lam_d + half_gd)],
        ]
    )


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalue-based stability summary of a drift matrix.

    ``margin_to_bound`` is the smallest of ``1 - xi/xi_max`` over the two
    modulated modes when parameters are supplied, ``None`` otherwise.  It is
    the closed-form modulation-ceiling margin, reported alongside the exact
    eigenvalue verdict; the two agree when only one mode is driven.
    """

    eigenvalues: NDArray[np.complex128]
    max_real_part: float
    hurwitz: bool
    margin_to_bound: float | None = None


def stability_eigen(
    A: NDArray[np.float64], d: DimensionlessParams | None = None
) -> StabilityReport:
    """Eigenvalues of the drift matrix and the Hurwitz verdict.

    Eigenvalues are sorted by descending real part so the leading entry is
    always the stability-critical one.
    """
    values = np.linalg.eigvals(np.asarray(A, dtype=float))
    order = np.argsort(-values.real, kind="stable")
    values = values[order]
    max_real = float(values[0].real)
    margin: float | None = None
    if d is not None:
        report = validate_stability_inputs(d)
        margin = min(1.0 - report.ratio_m, 1.0 - report.ratio_d)
    return StabilityReport(
        eigenvalues=values,
        max_real_part=max_real,
        hurwitz=max_real < 0.0,
        margin_to_bound=margin,
    )


def susceptibility_numeric(
    A: NDArray[np.float64], omega: float | NDArray[np.float64]
) -> NDArray[np.complex128]:
    """Resolvent route: ``chi(w) = (-i w I - A)^-1``.

    Parameters
    ----------
    A:
        Drift matrix, shape (6, 6).
    omega:
        Frequency or array of frequencies in units of ``gamma_m``.

    Returns
    -------
    numpy.ndarray
        Complex array of shape ``omega.shape + (6, 6)``.

    Raises
    ------
    PoleError
        If the resolvent is singular at some requested frequency.
    """
    A = np.asarray(A, dtype=float)
    w = np.asarray(omega, dtype=float)
    M = -1j * w[..., None, None] * _IDENTITY - A
    try:
        return np.linalg.solve(M, np.broadcast_to(_IDENTITY + 0j, M.shape))
    except np.linalg.LinAlgError:
        dets = np.linalg.det(M)
        at = w if w.ndim == 0 else w[np.unravel_index(np.argmin(np.abs(dets)), w.shape)]
        raise PoleError(float(at)) from None


def _inverse_bare(d: DimensionlessParams, w: NDArray[np.float64]):
    """Bare inverse susceptibilities chi0^-1, chi_{+-m}^-1, chi_{+-d}^-1."""
    iw = 1j * w
    chi0_inv = d.kappa / 2.0 - iw
    chi_pm_inv = d.gamma_m / 2.0 + d.lam_m - iw
    chi_mm_inv = d.gamma_m / 2.0 - d.lam_m - iw
    chi_pd_inv = d.gamma_d / 2.0 + d.lam_d - iw
    chi_md_inv = d.gamma_d / 2.0 - d.lam_d - iw
    return chi0_inv, chi_pm_inv, chi_mm_inv, chi_pd_inv, chi_md_inv


def susceptibility_closed(
    d: DimensionlessParams, omega: float | NDArray[np.float64]
) -> NDArray[np.complex128]:
    """Closed-form route for the 18 nonzero susceptibility elements.

    The dynamics splits into two uncoupled triples, ``(X_a, P_b, P_d)`` and
    ``(P_a, X_b, X_d)``.  Each element is the textbook expression, e.g.

        chi_11 = [chi0^-1 + g^2 chi_{+m} + G^2 chi_{+d}]^-1,
        chi_14 = -g [chi0^-1 chi_{+m}^-1 + g^2 + G^2 chi_{+d} chi_{+m}^-1]^-1,

    multiplied through by the bare factors so that removable pole factors
    (vanishing ``chi_{+-}^-1`` at strong modulation) cancel exactly.  Every
    element of a triple then shares one cubic denominator, e.g.

        den_plus = chi0^-1 chi_{+m}^-1 chi_{+d}^-1
                   + g^2 chi_{+d}^-1 + G^2 chi_{+m}^-1.

    Structural zeros are exact.  Tests assert element-by-element agreement
    with the resolvent route and with the uncleared textbook forms.

    Raises
    ------
    PoleError
        If a shared denominator vanishes (a true pole of the response).
    """
    w = np.asarray(omega, dtype=float)
    chi0_inv, chi_pm_inv, chi_mm_inv, chi_pd_inv, chi_md_inv = _inverse_bare(d, w)
    g, G = d.g, d.G
    g2, G2 = g * g, G * G

    den_plus = chi0_inv * chi_pm_inv * chi_pd_inv + g2 * chi_pd_inv + G2 * chi_pm_inv
    den_minus = chi0_inv * chi_mm_inv * chi_md_inv + g2 * chi_md_inv + G2 * chi_mm_inv
    for den, label in ((den_plus, "plus"), (den_minus, "minus")):
        zero = den == 0.0
        if np.any(zero):
            at = w if w.ndim == 0 else w[np.unravel_index(np.argmax(zero), w.shape)]
            raise PoleError(
                float(at), f"closed-form denominator ({label} triple) vanishes at omega={float(at)!r}"
            )

    chi = np.zeros(w.shape + (6, 6), dtype=complex)
    # Triple (X_a, P_b, P_d): rows/cols 1, 4, 6 in 1-based labels.
    chi[..., 0, 0] = chi_pm_inv * chi_pd_inv / den_plus
    chi[..., 0, 3] = -g * chi_pd_inv / den_plus
    chi[..., 0, 5] = G * chi_pm_inv / den_plus
    chi[..., 3, 0] = g * chi_pd_inv / den_plus
    chi[..., 3, 3] = (chi0_inv * chi_pd_inv + G2) / den_plus
    chi[..., 3, 5] = g * G / den_plus
    chi[..., 5, 0] = -G * chi_pm_inv / den_plus
    chi[..., 5, 3] = g * G / den_plus
    chi[..., 5, 5] = (chi0_inv * chi_pm_inv + g2) / den_plus
    # Triple (P_a, X_b, X_d): rows/cols 2, 3, 5.
    chi[..., 1, 1] = chi_mm_inv * chi_md_inv / den_minus
    chi[..., 1, 2] = g * chi_md_inv / den_minus
    chi[..., 1, 4] = -G * chi_mm_inv / den_minus
    chi[..., 2, 1] = -g * chi_md_inv / den_minus
    chi[..., 2, 2] = (chi0_inv * chi_md_inv + G2) / den_minus
    chi[..., 2, 4] = g * G / den_minus
    chi[..., 4, 1] = G * chi_mm_inv / den_minus
    chi[..., 4, 2] = g * G / den_minus
    chi[..., 4, 4] = (chi0_inv * chi_mm_inv + g2) / den_minus
    return chi


def induced_paramp_a(
    d: DimensionlessParams, omega: float | NDArray[np.float64]
) -> complex | NDArray[np.complex128]:
    """Induced parametric-amplification coefficient of the cavity field.

    The two mechanical-type modes imprint their modulations onto the field:

        lam_a(w) = g^2 lam_m / [(gamma_m/2 - i w)^2 - lam_m^2]
                 + G^2 lam_d / [(gamma_d/2 - i w)^2 - lam_d^2].

    Raises
    ------
    PoleError
        If either denominator vanishes at the requested frequency.
    """
    w = np.asarray(omega, dtype=float)
    den_m = (d.gamma_m / 2.0 - 1j * w) ** 2 - d.lam_m**2
    den_d = (d.gamma_d / 2.0 - 1j * w) ** 2 - d.lam_d**2
    for den in (den_m, den_d):
        zero = den == 0.0
        if np.any(zero):
            at = w if w.ndim == 0 else w[np.unravel_index(np.argmax(zero), w.shape)]
            raise PoleError(float(at))
    out = d.g**2 * d.lam_m / den_m + d.G**2 * d.lam_d / den_d
    return complex(out) if w.ndim == 0 else out


def diffusion_matrix(d: DimensionlessParams) -> NDArray[np.float64]:
    """Diagonal diffusion matrix of the Markovian input noises.

    Each quadrature of a mode diffuses at ``rate * (nbar + 1/2)``.
    """
    return np.diag(
        [
            d.kappa * (d.nbar_a + 0.5),
            d.kappa * (d.nbar_a + 0.5),
            d.gamma_m * (d.nbar_m + 0.5),
            d.gamma_m * (d.nbar_m + 0.5),
            d.gamma_d * (d.nbar_d + 0.5),
            d.gamma_d * (d.nbar_d + 0.5),
        ]
    )


def steady_state_covariance(
    A: NDArray[np.float64], d: DimensionlessParams
) -> NDArray[np.float64]:
    """Steady-state symmetrized covariance matrix V.

    Solves ``A V + V A^T + D = 0`` by direct vectorization to a 36x36 linear
    system (the problem is small enough that exactness beats iteration).

    Raises
    ------
    NoSteadyStateError
        If ``A`` is not Hurwitz, in which case no stationary state exists.
    """
    A = np.asarray(A, dtype=float)
    report = stability_eigen(A)
    if not report.hurwitz:
        raise NoSteadyStateError(
            "drift matrix is not Hurwitz "
            f"(max real part {report.max_real_part:.6g}); no steady state"
        )
    D = diffusion_matrix(d)
    eye = np.eye(6)
    # Row-major vec: vec(A V) = (A (x) I) vec(V), vec(V A^T) = (I (x) A) vec(V).
    lhs = np.kron(A, eye) + np.kron(eye, A)
    v = np.linalg.solve(lhs, -D.reshape(-1))
    V = v.reshape(6, 6)
    return (V + V.T) / 2.0


def symplectic_form() -> NDArray[np.float64]:
    """Standard symplectic form for the (X, P) ordering used here."""
    J = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((6, 6))
    for k in range(3):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = J
    return out

from __future__ import annotations

import numpy as np
import pytest

from trimode import (
    BandwidthUndefinedError,
    DimensionlessParams,
    bandwidth_result,
    build_drift,
    cubic_coefficients,
    fwhm_numeric,
    gain_bandwidth_analytic,
    gain_on_resonance,
)


def xi_m_for_sqrt_gain(c0: float, c1: float, target: float) -> float:
    """Modulation depth giving the requested on-resonance sqrt-gain at xi_d = 0."""
    u = c0 * (1.0 - target) / (target * (1.0 + c1) + 1.0 - c1)
    return 1.0 - u


def test_cubic_coefficients_match_drift_minor():
    # the cubic is the characteristic polynomial of the 3x3 drift block of
    # the amplified quadratures: a is its trace, c minus its determinant,
    # and the printed b drops the term gamma_m gamma_d (1 - xi_m - xi_d)/4
    # from the second symmetric function (sub-leading when kappa dominates)
    d = DimensionlessParams(
        c0=37.0, c1=2.2, xi_m=4.5, xi_d=0.6, kappa=180.0, gamma_d=0.7
    )
    block = np.ix_([1, 2, 4], [1, 2, 4])
    m = build_drift(d)[block]
    tr = float(np.trace(m))
    e2 = 0.5 * (tr**2 - float(np.trace(m @ m)))
    det = float(np.linalg.det(m))
    cc = cubic_coefficients(d)
    assert cc.a == pytest.approx(tr, rel=1e-14)
    assert cc.c == pytest.approx(-det, rel=1e-12)
    dropped = 0.25 * d.gamma_m * d.gamma_d * (1.0 - d.xi_m - d.xi_d)
    assert cc.b == pytest.approx(e2 - dropped, rel=1e-12)
    # in the regime the coefficient was written for the dropped term is tiny
    assert abs(dropped / cc.b) < 1e-3


def test_constant_term_vanishes_exactly_at_gain_pole():
    c0 = 50.0
    d = DimensionlessParams(c0=c0, c1=0.0, xi_m=1.0 + c0)
    assert cubic_coefficients(d).c == 0.0
    assert gain_on_resonance(d).xi_m_divergent == 1.0 + c0


def test_fwhm_of_unmodulated_dip_is_broadened_linewidth():
    # without modulation the optical response shows the standard
    # cooperativity-broadened mechanical window of width (C0 + 1) gamma_m;
    # the residual is the finite-kappa correction of order kappa^-1
    d = DimensionlessParams(c0=100.0, c1=0.0, kappa=1.0e6)
    width = fwhm_numeric(d)
    assert width == pytest.approx(101.0, rel=2e-4)
    assert width != 101.0


def test_gain_form_equals_weak_form_over_denominator():
    d = DimensionlessParams(
        c0=1000.0, c1=0.5, xi_m=xi_m_for_sqrt_gain(1000.0, 0.5, 13.0), kappa=1e5
    )
    ana = gain_bandwidth_analytic(d)
    denom = 1.0 - (d.gamma_m / d.kappa) * (d.c0 + d.c1 * (1.0 - d.xi_m))
    assert ana.delta_omega_gain == pytest.approx(
        ana.delta_omega_weak / denom, rel=1e-12
    )


@pytest.mark.parametrize(
    "c0, c1, kappa, gamma_d, target",
    [
        (1000.0, 0.0, 1e5, 1.0, 11.0),
        (1000.0, 0.0, 1e5, 1.0, 15.0),
        (500.0, 0.0, 1e5, 1.0, 12.0),
        (2000.0, 0.0, 1e6, 1.0, 20.0),
        (1000.0, 0.001, 1e5, 0.01, 12.0),
    ],
)
def test_weak_coupling_estimate_tracks_numeric_fwhm(c0, c1, kappa, gamma_d, target):
    # moderate gain, tiny c1 and a fast cavity: the closed-form estimate
    # must land within 15% of the measured width
    d = DimensionlessParams(
        c0=c0,
        c1=c1,
        xi_m=xi_m_for_sqrt_gain(c0, c1, target),
        kappa=kappa,
        gamma_d=gamma_d,
    )
    res = bandwidth_result(d)
    assert res.xi_d_small and res.large_gain and res.weak_coupling
    ratio = res.delta_omega_numeric / res.delta_omega_analytic
    assert 0.85 < ratio < 1.15


def test_fwhm_is_grid_independent():
    d = DimensionlessParams(
        c0=1000.0, c1=0.0, xi_m=xi_m_for_sqrt_gain(1000.0, 0.0, 11.0), kappa=1e5
    )
    coarse = fwhm_numeric(d, points=2048)
    fine = fwhm_numeric(d, points=16384)
    assert coarse == pytest.approx(fine, rel=1e-9)


def test_flat_response_raises():
    with pytest.raises(BandwidthUndefinedError):
        fwhm_numeric(DimensionlessParams(c0=0.0, c1=0.0))
    with pytest.raises(BandwidthUndefinedError):
        gain_bandwidth_analytic(
            DimensionlessParams(c0=4.0, c1=3.0, xi_m=3.0)
        )

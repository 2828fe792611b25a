"""Quantum amplification and squeezing in a modulated three-mode chain.

A driven cavity couples optomechanically to a mechanical mirror and,
through the cavity field, to a Bogoliubov mode of an intracavity
condensate.  Coherent modulation of the two coupling tones turns the
linearized dynamics into a phase-sensitive amplifier; this package
computes its gain, added noise, output squeezing, state purity,
stability region and gain-bandwidth from the drift matrix of the
quadrature Langevin equations.
"""

from .amplifier import (
    AMPLIFIED_QUADRATURE_INDEX,
    SQUEEZED_QUADRATURE_INDEX,
    AmplifierPoint,
    OnResonanceGain,
    added_noise_on_resonance,
    added_noise_spectrum,
    amplified_on_resonance,
    amplified_spectrum,
    amplifier_point,
    gain_db,
    gain_on_resonance,
    gain_spectrum,
    scattering_matrix,
)
from .bandwidth import (
    AnalyticBandwidth,
    BandwidthResult,
    CubicCoeffs,
    bandwidth_result,
    cubic_coefficients,
    fwhm_numeric,
    gain_bandwidth_analytic,
)
from .errors import (
    BandwidthUndefinedError,
    ConfigError,
    NoSteadyStateError,
    PoleError,
    SingularConfigError,
    TrimodeError,
    UndefinedAddedNoiseError,
    UnphysicalSpectraError,
)
from .params import (
    DimensionlessParams,
    PhysicalParams,
    StabilityBounds,
    StabilityMargins,
    collective_cooperativities,
    derive_dimensionless,
    to_physical,
    validate_stability_inputs,
)
from .response import (
    StabilityReport,
    build_drift,
    diffusion_matrix,
    induced_paramp_a,
    stability_eigen,
    steady_state_covariance,
    susceptibility_closed,
    susceptibility_numeric,
    symplectic_form,
)
from .squeezer import (
    AsymptoticLimits,
    EtaFactors,
    SqueezePoint,
    asymptotic_limits,
    cross_correlation_spectrum,
    eta_s_factors,
    purity,
    purity_on_resonance,
    squeeze_point,
    squeezing_db,
    squeezing_on_resonance,
    squeezing_spectrum,
)
from .sweep import (
    OBSERVABLES,
    SENTINELS,
    CheckOutcome,
    Series,
    SweepConfig,
    SweepResult,
    check_config,
    config_from_dict,
    emit,
    load_config,
    run_sweep,
)

__all__ = [
    "AMPLIFIED_QUADRATURE_INDEX",
    "SQUEEZED_QUADRATURE_INDEX",
    "AmplifierPoint",
    "AnalyticBandwidth",
    "AsymptoticLimits",
    "BandwidthResult",
    "BandwidthUndefinedError",
    "CheckOutcome",
    "ConfigError",
    "CubicCoeffs",
    "DimensionlessParams",
    "EtaFactors",
    "NoSteadyStateError",
    "OBSERVABLES",
    "OnResonanceGain",
    "PhysicalParams",
    "PoleError",
    "SENTINELS",
    "Series",
    "SingularConfigError",
    "SqueezePoint",
    "StabilityBounds",
    "StabilityMargins",
    "StabilityReport",
    "SweepConfig",
    "SweepResult",
    "TrimodeError",
    "UndefinedAddedNoiseError",
    "UnphysicalSpectraError",
    "added_noise_on_resonance",
    "added_noise_spectrum",
    "amplified_on_resonance",
    "amplified_spectrum",
    "amplifier_point",
    "asymptotic_limits",
    "bandwidth_result",
    "build_drift",
    "check_config",
    "collective_cooperativities",
    "config_from_dict",
    "cross_correlation_spectrum",
    "cubic_coefficients",
    "derive_dimensionless",
    "diffusion_matrix",
    "emit",
    "eta_s_factors",
    "fwhm_numeric",
    "gain_bandwidth_analytic",
    "gain_db",
    "gain_on_resonance",
    "gain_spectrum",
    "induced_paramp_a",
    "load_config",
    "purity",
    "purity_on_resonance",
    "run_sweep",
    "scattering_matrix",
    "squeeze_point",
    "squeezing_db",
    "squeezing_on_resonance",
    "squeezing_spectrum",
    "stability_eigen",
    "steady_state_covariance",
    "susceptibility_closed",
    "susceptibility_numeric",
    "symplectic_form",
    "to_physical",
    "validate_stability_inputs",
]

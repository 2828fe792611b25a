"""Parameter models for the cavity / mirror / condensate three-mode system.

Two views of the same system live here.  :class:`PhysicalParams` carries
laboratory rates in rad/s and exists for ingestion and reporting only.
:class:`DimensionlessParams` is the working set used by every other module:
cooperativities ``C0 = 4 g^2 / (kappa gamma_m)`` and ``C1 = 4 G^2 /
(kappa gamma_d)``, modulation amplitudes ``xi = 2 lambda / gamma``, rates in
units of the mechanical damping, and the three bath occupancies.

The module also computes the collective cooperativities ``C_m``, ``C_d`` and
the modulation ceilings ``xi_max = 1 + C`` that bound the parametric drives,
plus a margin report for requested drive amplitudes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import SingularConfigError

__all__ = [
    "PhysicalParams",
    "DimensionlessParams",
    "StabilityBounds",
    "StabilityMargins",
    "derive_dimensionless",
    "to_physical",
    "collective_cooperativities",
    "validate_stability_inputs",
]


def _ensure_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} must be strictly positive, got {value!r}")


def _ensure_non_negative(name: str, value: float) -> None:
    if value < 0.0:
        raise ValueError(f"{name} must be non-negative, got {value!r}")


def _ensure_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-unit description of the system.

    All rates are angular frequencies in rad/s.  The modulation amplitudes
    ``lam_m``, ``lam_d`` are real and non-negative; the modulation phases are
    assumed to have been absorbed into the mode quadratures, so complex
    amplitudes are not representable here.
    """

    kappa: float
    """Cavity amplitude decay rate."""

    gamma_m: float
    """Mechanical damping rate."""

    gamma_d: float
    """Bogoliubov-mode damping rate."""

    g: float
    """Field-enhanced optomechanical coupling."""

    G: float
    """Field-enhanced atom-light coupling."""

    lam_m: float = 0.0
    """Mirror spring-modulation amplitude."""

    lam_d: float = 0.0
    """Atomic collision-modulation amplitude."""

    nbar_a: float = 0.0
    """Thermal occupancy of the optical bath."""

    nbar_m: float = 0.0
    """Thermal occupancy of the mechanical bath."""

    nbar_d: float = 0.0
    """Thermal occupancy of the condensate bath."""

    def __post_init__(self) -> None:
        for name in ("kappa", "gamma_m", "gamma_d"):
            value = getattr(self, name)
            _ensure_finite(name, value)
            _ensure_positive(name, value)
        for name in ("g", "G", "lam_m", "lam_d", "nbar_a", "nbar_m", "nbar_d"):
            value = getattr(self, name)
            _ensure_finite(name, value)
            _ensure_non_negative(name, value)


@dataclass(frozen=True)
class DimensionlessParams:
    """Working parameter set in units of the mechanical damping rate.

    ``gamma_m`` is kept as an explicit field (normally 1.0) so that rate
    ratios stay readable; every downstream formula uses the ratios only.
    """

    c0: float
    """Optomechanical cooperativity ``4 g^2 / (kappa gamma_m)``."""

    c1: float
    """Opto-atomic cooperativity ``4 G^2 / (kappa gamma_d)``."""

    xi_m: float = 0.0
    """Mirror modulation amplitude ``2 lam_m / gamma_m``."""

    xi_d: float = 0.0
    """Condensate modulation amplitude ``2 lam_d / gamma_d``."""

    kappa: float = 1.0e4
    """Cavity decay in units of ``gamma_m``."""

    gamma_m: float = 1.0
    """Mechanical damping; the unit of every other rate."""

    gamma_d: float = 1.0
    """Bogoliubov damping in units of ``gamma_m``."""

    nbar_a: float = 0.0
    nbar_m: float = 0.0
    nbar_d: float = 0.0

    def __post_init__(self) -> None:
        for name in ("kappa", "gamma_m", "gamma_d"):
            value = getattr(self, name)
            _ensure_finite(name, value)
            _ensure_positive(name, value)
        for name in ("c0", "c1", "xi_m", "xi_d", "nbar_a", "nbar_m", "nbar_d"):
            value = getattr(self, name)
            _ensure_finite(name, value)
            _ensure_non_negative(name, value)

    @property
    def g(self) -> float:
        """Coupling reconstructed from ``c0``, in units of ``gamma_m``."""
        return math.sqrt(self.c0 * self.kappa * self.gamma_m) / 2.0

    @property
    def G(self) -> float:
        """Coupling reconstructed from ``c1``, in units of ``gamma_m``."""
        return math.sqrt(self.c1 * self.kappa * self.gamma_d) / 2.0

    @property
    def lam_m(self) -> float:
        return self.xi_m * self.gamma_m / 2.0

    @property
    def lam_d(self) -> float:
        return self.xi_d * self.gamma_d / 2.0


def derive_dimensionless(p: PhysicalParams) -> DimensionlessParams:
    """Convert laboratory rates to the dimensionless working set.

    Parameters
    ----------
    p:
        Validated physical parameters.

    Returns
    -------
    DimensionlessParams
        Cooperativities, modulation amplitudes and rate ratios in units of
        ``p.gamma_m``.

    Notes
    -----
    Emits a warning when ``g`` or ``G`` reaches the cavity decay rate: the
    linearized formulas remain evaluable there, but the red-detuned
    weak-coupling assumptions behind them are strained.
    """
    if p.g >= p.kappa or p.G >= p.kappa:
        warnings.warn(
            "coupling comparable to cavity decay (g or G >= kappa); "
            "weak-coupling formulas may be unreliable",
            stacklevel=2,
        )
    return DimensionlessParams(
        c0=4.0 * p.g**2 / (p.kappa * p.gamma_m),
        c1=4.0 * p.G**2 / (p.kappa * p.gamma_d),
        xi_m=2.0 * p.lam_m / p.gamma_m,
        xi_d=2.0 * p.lam_d / p.gamma_d,
        kappa=p.kappa / p.gamma_m,
        gamma_m=1.0,
        gamma_d=p.gamma_d / p.gamma_m,
        nbar_a=p.nbar_a,
        nbar_m=p.nbar_m,
        nbar_d=p.nbar_d,
    )


def to_physical(d: DimensionlessParams, gamma_m: float) -> PhysicalParams:
    """Rescale a dimensionless parameter set to laboratory units.

    ``gamma_m`` is the mechanical damping rate in rad/s that the
    dimensionless unit corresponds to.
    """
    _ensure_positive("gamma_m", gamma_m)
    scale = gamma_m / d.gamma_m
    return PhysicalParams(
        kappa=d.kappa * scale,
        gamma_m=gamma_m,
        gamma_d=d.gamma_d * scale,
        g=d.g * scale,
        G=d.G * scale,
        lam_m=d.lam_m * scale,
        lam_d=d.lam_d * scale,
        nbar_a=d.nbar_a,
        nbar_m=d.nbar_m,
        nbar_d=d.nbar_d,
    )


@dataclass(frozen=True)
class StabilityBounds:
    """Collective cooperativities and the modulation ceilings they imply."""

    c_m: float
    c_d: float
    xi_m_max: float
    xi_d_max: float


def _collective(c_own: float, c_other: float, xi_other: float) -> float:
    numerator = 1.0 + c_other - xi_other**2
    denominator = numerator**2 - (xi_other * c_other) ** 2
    if denominator == 0.0:
        raise SingularConfigError(
            "collective-cooperativity denominator vanishes: "
            f"(1 + C_other - xi_other^2)^2 - (xi_other C_other)^2 = 0 "
            f"at C_other={c_other!r}, xi_other={xi_other!r}"
        )
    return c_own * numerator / denominator


def collective_cooperativities(d: DimensionlessParams) -> StabilityBounds:
    """Collective cooperativities ``C_m``, ``C_d`` and ceilings ``1 + C``.

    ``C_m`` depends on the opposite-mode drive ``xi_d`` (and vice versa): each
    mode sees an effective damping renormalized by the other mode through the
    cavity.  With ``xi_d = 0`` the expression collapses to
    ``C_m = C0 / (1 + C1)`` exactly.

    Raises
    ------
    SingularConfigError
        If a denominator ``(1 + C_other - xi_other^2)^2 - (xi_other
        C_other)^2`` vanishes.
    """
    c_m = _collective(d.c0, d.c1, d.xi_d)
    c_d = _collective(d.c1, d.c0, d.xi_m)
    return StabilityBounds(
        c_m=c_m, c_d=c_d, xi_m_max=1.0 + c_m, xi_d_max=1.0 + c_d
    )


@dataclass(frozen=True)
class StabilityMargins:
    """Requested drive amplitudes relative to their ceilings.

    ``ratio = xi / xi_max``; a mode with ratio >= 1 is flagged unstable by the
    bound.  ``marginal`` marks ratios within ``1e-9`` of exactly 1.
    """

    ratio_m: float
    ratio_d: float
    unstable_m: bool
    unstable_d: bool
    marginal_m: bool
    marginal_d: bool

    @property
    def unstable(self) -> bool:
        return self.unstable_m or self.unstable_d


def validate_stability_inputs(
    d: DimensionlessParams,
    xi_m: float | None = None,
    xi_d: float | None = None,
) -> StabilityMargins:
    """Report how close the requested drives sit to their ceilings.

    The bounds are evaluated at the opposite-mode amplitude supplied (the
    mutual fixed point of ``xi_m_max(xi_d)`` and ``xi_d_max(xi_m)`` is not
    solved).  This never raises; it is a reporting operation.
    """
    xi_m = d.xi_m if xi_m is None else xi_m
    xi_d = d.xi_d if xi_d is None else xi_d

    def ratio(xi_own: float, c_own: float, c_other: float, xi_other: float) -> float:
        # A singular or non-positive ceiling means the bound formula has
        # left its domain; any nonzero drive is then reported as past it.
        try:
            ceiling = 1.0 + _collective(c_own, c_other, xi_other)
        except SingularConfigError:
            ceiling = math.nan
        if not math.isfinite(ceiling) or ceiling <= 0.0:
            return math.inf if xi_own > 0.0 else 0.0
        return xi_own / ceiling

    ratio_m = ratio(xi_m, d.c0, d.c1, xi_d)
    ratio_d = ratio(xi_d, d.c1, d.c0, xi_m)
    close = 1.0e-9
    return StabilityMargins(
        ratio_m=ratio_m,
        ratio_d=ratio_d,
        unstable_m=ratio_m >= 1.0,
        unstable_d=ratio_d >= 1.0,
        marginal_m=abs(ratio_m - 1.0) <= close,
        marginal_d=abs(ratio_d - 1.0) <= close,
    )

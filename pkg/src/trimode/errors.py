"""Exception types shared across the package."""

from __future__ import annotations


class TrimodeError(Exception):
    """Base class for all errors raised by this package."""


class SingularConfigError(TrimodeError):
    """A parameter combination makes a closed-form denominator vanish."""


class PoleError(TrimodeError):
    """The response matrix is singular at the requested frequency."""

    def __init__(self, omega: float, message: str | None = None) -> None:
        self.omega = omega
        super().__init__(message or f"response matrix is singular at omega={omega!r}")


class NoSteadyStateError(TrimodeError):
    """The drift matrix is not Hurwitz, so no steady-state covariance exists."""


class UndefinedAddedNoiseError(TrimodeError):
    """Added noise is undefined because the gain vanishes."""


class UnphysicalSpectraError(TrimodeError):
    """Spectra violate the uncertainty bound; indicates a bug upstream."""


class BandwidthUndefinedError(TrimodeError):
    """No half-maximum crossing exists within the scan window."""


class ConfigError(TrimodeError):
    """A sweep configuration failed to parse or validate."""

    def __init__(self, message: str, location: str | None = None) -> None:
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")

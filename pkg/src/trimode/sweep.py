"""Parameter sweeps from declarative configs, and tabular emission.

A sweep walks one named parameter over a range, optionally for several
series (per-series parameter overrides), evaluates a list of observables
at each point and collects the values into a column table.  Configs are
TOML files with a documented schema; results serialize to CSV (metadata in
'#' comment lines) or JSON (schema-versioned object).

Modulation depths can be given raw (``xi_m``) or as a fraction of the
stability ceiling (``xi_m_ratio``); ratios are resolved per point, with
``xi_d_ratio`` resolved first against the ceiling at xi_m = 0 and
``xi_m_ratio`` then resolved against the ceiling at the resulting xi_d
(the two ceilings depend on each other, and no fixed point is solved for).
The rules ``squeeze_case_i``/``squeeze_case_ii`` instead tune xi_m (resp.
xi_d) to the perfect-mechanical-squeezing condition; points where the
tuning has no non-negative solution carry the ``inapplicable`` sentinel.

Cell values are floats, or one of the documented sentinel strings:
``inf``/``-inf`` (a genuinely divergent value), ``unstable`` (no steady
state at this point), ``pole`` (parameters sit exactly on a resonance of
the response), ``inapplicable`` (the observable or tuning rule is not
defined here).  Evaluation is serial and pure, so identical configs yield
byte-identical output.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib  # type: ignore[no-redef]

import numpy as np

from .amplifier import (
    added_noise_on_resonance,
    added_noise_spectrum,
    amplified_on_resonance,
    amplified_spectrum,
    gain_on_resonance,
    gain_spectrum,
    scattering_matrix,
)
from .bandwidth import fwhm_numeric
from .errors import (
    BandwidthUndefinedError,
    ConfigError,
    PoleError,
    SingularConfigError,
    TrimodeError,
    UndefinedAddedNoiseError,
)
from .params import DimensionlessParams, collective_cooperativities
from .response import build_drift, stability_eigen, susceptibility_closed
from .squeezer import (
    cross_correlation_spectrum,
    purity,
    purity_on_resonance,
    squeezing_db,
    squeezing_on_resonance,
    squeezing_spectrum,
)

try:
    _VERSION = version("trimode")
except PackageNotFoundError:
    _VERSION = "0+unknown"

SCHEMA_VERSION = 1

SENTINELS = ("inf", "-inf", "unstable", "pole", "inapplicable")

_MODES = ("optical", "mech", "bog")

_PARAM_FIELDS = (
    "c0",
    "c1",
    "xi_m",
    "xi_d",
    "kappa",
    "gamma_m",
    "gamma_d",
    "nbar_a",
    "nbar_m",
    "nbar_d",
)

_RATIO_KEYS = ("xi_m_ratio", "xi_d_ratio")
_RULES = ("squeeze_case_i", "squeeze_case_ii")
_AXIS_CHOICES = _PARAM_FIELDS + _RATIO_KEYS + ("omega",)

OBSERVABLES = tuple(
    f"{stem}_{mode}"
    for stem in (
        "gain",
        "gain_db",
        "added_noise",
        "amplified",
        "squeezing",
        "squeezing_db",
        "n_eff",
        "bandwidth",
    )
    for mode in _MODES
) + ("stability",)


@dataclass(frozen=True)
class Series:
    """One labeled parameter variation within a sweep."""

    label: str
    overrides: tuple[tuple[str, float | str], ...] = ()


@dataclass(frozen=True)
class SweepConfig:
    """Validated description of one sweep.

    ``omega`` is the single evaluation frequency for spectral observables
    (ignored when the axis itself is ``omega``); on-resonance sweeps use
    the closed-form route and are therefore independent of the absolute
    rates.
    """

    base: DimensionlessParams
    axis_parameter: str
    start: float
    stop: float
    points: int
    scale: str = "linear"
    observables: tuple[str, ...] = ()
    omega: float = 0.0
    series: tuple[Series, ...] = ()

    def __post_init__(self) -> None:
        if self.axis_parameter not in _AXIS_CHOICES:
            raise ConfigError(
                f"unknown axis parameter {self.axis_parameter!r}; "
                f"expected one of {_AXIS_CHOICES}",
                location="axis.parameter",
            )
        if self.scale not in ("linear", "log"):
            raise ConfigError(
                f"scale must be 'linear' or 'log', got {self.scale!r}",
                location="axis.scale",
            )
        if not isinstance(self.points, int) or self.points < 1:
            raise ConfigError(
                f"points must be a positive integer, got {self.points!r}",
                location="axis.points",
            )
        for name, value in (("start", self.start), ("stop", self.stop)):
            if not math.isfinite(value):
                raise ConfigError(
                    f"axis {name} must be finite, got {value!r}",
                    location=f"axis.{name}",
                )
        if self.scale == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise ConfigError(
                "log-scaled axis requires a strictly positive range",
                location="axis.scale",
            )
        lo = min(self.start, self.stop)
        if self.axis_parameter in ("kappa", "gamma_m", "gamma_d") and lo <= 0.0:
            raise ConfigError(
                f"axis over {self.axis_parameter} must stay positive",
                location="axis.start",
            )
        if self.axis_parameter not in ("omega", "kappa", "gamma_m", "gamma_d") and lo < 0.0:
            raise ConfigError(
                f"axis over {self.axis_parameter} must be non-negative",
                location="axis.start",
            )
        if not self.observables:
            raise ConfigError("observables list is empty", location="observables")
        for name in self.observables:
            if name not in OBSERVABLES:
                raise ConfigError(
                    f"unknown observable {name!r}", location="observables"
                )
        if not math.isfinite(self.omega):
            raise ConfigError("omega must be finite", location="omega")
        labels = [s.label for s in self.series]
        if len(set(labels)) != len(labels):
            raise ConfigError("series labels must be unique", location="series")
        for s in self.series:
            for key, value in s.overrides:
                _validate_override(key, value, f"series[{s.label}].{key}")

    def axis_values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start])
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


def _validate_override(key: str, value: float | str, location: str) -> None:
    if key == "xi_rule":
        if value not in _RULES:
            raise ConfigError(
                f"unknown xi_rule {value!r}; expected one of {_RULES}",
                location=location,
            )
        return
    if key not in _PARAM_FIELDS and key not in _RATIO_KEYS:
        raise ConfigError(f"unknown series key {key!r}", location=location)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}", location=location)
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite", location=location)
    if key in ("kappa", "gamma_m", "gamma_d"):
        if value <= 0.0:
            raise ConfigError(f"{key} must be positive", location=location)
    elif value < 0.0:
        raise ConfigError(f"{key} must be non-negative", location=location)


@dataclass(frozen=True)
class SweepResult:
    """Column table produced by :func:`run_sweep`.

    ``rows`` holds one tuple per (series, axis point); cells are floats or
    sentinel strings from :data:`SENTINELS` (plus the series label column).
    """

    columns: tuple[str, ...]
    rows: tuple[tuple[float | str, ...], ...]
    metadata: dict[str, Any] = field(repr=False)


def load_config(path: str | Path) -> SweepConfig:
    """Parse and validate a TOML sweep config.

    Raises :class:`ConfigError` with the offending location for unknown
    keys, type errors and range violations; TOML syntax errors keep the
    parser's line/column message.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}", location=str(p)) from exc
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML parse error: {exc}", location=str(p)) from exc
    return config_from_dict(data, source=str(p))


def config_from_dict(data: dict[str, Any], source: str = "<dict>") -> SweepConfig:
    """Build a :class:`SweepConfig` from already-parsed config data."""
    known_top = {"base", "axis", "observables", "omega", "series"}
    for key in data:
        if key not in known_top:
            raise ConfigError(f"unknown key {key!r}", location=f"{source}:{key}")

    base_tbl = _require_table(data.get("base", {}), "base")
    for key, value in base_tbl.items():
        _validate_override(key, value, f"base.{key}")
    # c0/c1 may live on the axis or in series overrides, so the base table
    # does not have to carry them; zero coupling is the neutral default.
    fields = {"c0": 0.0, "c1": 0.0}
    fields.update({k: float(v) for k, v in base_tbl.items()})
    try:
        base = DimensionlessParams(**fields)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), location="base") from exc

    if "axis" not in data:
        raise ConfigError("missing [axis] table", location=source)
    axis_tbl = _require_table(data["axis"], "axis")
    known_axis = {"parameter", "start", "stop", "scale", "points"}
    for key in axis_tbl:
        if key not in known_axis:
            raise ConfigError(f"unknown key {key!r}", location=f"axis.{key}")
    for key in ("parameter", "start", "stop", "points"):
        if key not in axis_tbl:
            raise ConfigError(f"missing axis key {key!r}", location="axis")

    observables = data.get("observables")
    if not isinstance(observables, list) or not all(
        isinstance(o, str) for o in observables
    ):
        raise ConfigError(
            "observables must be a list of strings", location="observables"
        )

    omega = data.get("omega", 0.0)
    if isinstance(omega, bool) or not isinstance(omega, (int, float)):
        raise ConfigError("omega must be a number", location="omega")

    series: list[Series] = []
    raw_series = data.get("series", [])
    if not isinstance(raw_series, list):
        raise ConfigError("series must be an array of tables", location="series")
    for i, tbl in enumerate(raw_series):
        tbl = _require_table(tbl, f"series[{i}]")
        label = tbl.get("label", f"series-{i + 1}")
        if not isinstance(label, str):
            raise ConfigError("label must be a string", location=f"series[{i}].label")
        overrides = tuple(
            (k, v if k == "xi_rule" else float(v))
            for k, v in tbl.items()
            if k != "label"
        )
        series.append(Series(label=label, overrides=overrides))

    points = axis_tbl["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError("points must be an integer", location="axis.points")

    return SweepConfig(
        base=base,
        axis_parameter=str(axis_tbl["parameter"]),
        start=float(axis_tbl["start"]),
        stop=float(axis_tbl["stop"]),
        points=points,
        scale=str(axis_tbl.get("scale", "linear")),
        observables=tuple(observables),
        omega=float(omega),
        series=tuple(series),
    )


def _require_table(obj: Any, location: str) -> dict[str, Any]:
    if not isinstance(obj, dict):
        raise ConfigError("expected a table", location=location)
    return obj


class _Inapplicable(Exception):
    """Internal: the point's tuning rule has no valid solution."""


def _resolve_point(
    cfg: SweepConfig, series: Series | None, x: float
) -> tuple[DimensionlessParams, float]:
    """Parameters and evaluation frequency for one sweep point."""
    values = {name: getattr(cfg.base, name) for name in _PARAM_FIELDS}
    derived: dict[str, float | str] = {}
    if series is not None:
        for key, val in series.overrides:
            if key in _PARAM_FIELDS:
                values[key] = float(val)
            else:
                derived[key] = val
    omega = cfg.omega
    axis = cfg.axis_parameter
    if axis == "omega":
        omega = x
    elif axis in _PARAM_FIELDS:
        values[axis] = x
    else:
        derived[axis] = x

    try:
        if "xi_d_ratio" in derived:
            ratio = float(derived["xi_d_ratio"])
            probe = DimensionlessParams(
                c0=values["c0"], c1=values["c1"], xi_m=0.0, xi_d=0.0
            )
            bound = collective_cooperativities(probe).xi_d_max
            if bound <= 0.0 and ratio > 0.0:
                raise _Inapplicable("xi_d ceiling is not positive here")
            values["xi_d"] = ratio * bound if ratio > 0.0 else 0.0
        if "xi_m_ratio" in derived:
            ratio = float(derived["xi_m_ratio"])
            probe = DimensionlessParams(
                c0=values["c0"], c1=values["c1"], xi_m=0.0, xi_d=values["xi_d"]
            )
            bound = collective_cooperativities(probe).xi_m_max
            if bound <= 0.0 and ratio > 0.0:
                raise _Inapplicable("xi_m ceiling is not positive here")
            values["xi_m"] = ratio * bound if ratio > 0.0 else 0.0
    except SingularConfigError as exc:
        raise _Inapplicable(str(exc)) from exc

    rule = derived.get("xi_rule")
    if rule == "squeeze_case_i":
        xi_m = 1.0 - values["c0"] / (1.0 + values["c1"])
        if xi_m < 0.0:
            raise _Inapplicable("squeeze_case_i needs c1 >= c0 - 1")
        values["xi_m"] = xi_m
    elif rule == "squeeze_case_ii":
        if values["c0"] <= 1.0:
            raise _Inapplicable("squeeze_case_ii needs c0 > 1")
        xi_d = (values["c1"] + 1.0 - values["c0"]) / (values["c0"] - 1.0)
        if xi_d < 0.0:
            raise _Inapplicable("squeeze_case_ii needs c1 > c0 - 1")
        values["xi_d"] = xi_d

    return DimensionlessParams(**values), omega


_MODE_SLOT = {"optical": 0, "mech": 1, "bog": 2}


def _tag(value: float) -> float | str:
    if math.isnan(value):
        raise TrimodeError("internal error: observable evaluated to NaN")
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _evaluate_cells(
    d: DimensionlessParams, omega: float, names: tuple[str, ...], stable: bool
) -> list[float | str]:
    """One table cell per observable name, sentinels where required."""
    blocked: str | None = None
    if not stable:
        blocked = "pole" if gain_on_resonance(d).divergent else "unstable"

    cache: dict[str, Any] = {}

    def on_resonance() -> dict[str, tuple[float, float, float]]:
        if "res" not in cache:
            g = gain_on_resonance(d)
            cache["res"] = {
                "gain": (g.gain_a, g.gain_m, g.gain_d),
                "added_noise": added_noise_on_resonance(d),
                "amplified": amplified_on_resonance(d),
                "squeezing": squeezing_on_resonance(d),
                "n_eff": purity_on_resonance(d),
            }
        return cache["res"]

    def chi():
        if "chi" not in cache:
            cache["chi"] = susceptibility_closed(d, np.array(omega))
        return cache["chi"]

    def spectral(stem: str, mode: str) -> float:
        if omega == 0.0:
            return on_resonance()[stem][_MODE_SLOT[mode]]
        matrix = chi()
        if stem == "gain":
            return float(gain_spectrum(scattering_matrix(matrix, d), mode))
        if stem == "added_noise":
            return float(added_noise_spectrum(matrix, d, mode))
        if stem == "amplified":
            return float(amplified_spectrum(matrix, d, mode))
        if stem == "squeezing":
            return float(squeezing_spectrum(matrix, d, mode))
        s_sq = float(squeezing_spectrum(matrix, d, mode))
        s_amp = float(amplified_spectrum(matrix, d, mode))
        s_xp = float(cross_correlation_spectrum(matrix, d, mode))
        return float(purity(s_sq, s_amp, s_xp, s_xp))

    cells: list[float | str] = []
    for name in names:
        if name == "stability":
            cells.append(1.0 if stable else 0.0)
            continue
        if blocked is not None:
            cells.append(blocked)
            continue
        stem, _, mode = name.rpartition("_")
        try:
            if stem == "bandwidth":
                cells.append(_tag(fwhm_numeric(d, mode)))
            elif stem == "gain_db":
                g = spectral("gain", mode)
                cells.append(_tag(10.0 * math.log10(g)) if g > 0.0 else "-inf")
            elif stem == "squeezing_db":
                cells.append(_tag(float(squeezing_db(spectral("squeezing", mode)))))
            else:
                cells.append(_tag(spectral(stem, mode)))
        except PoleError:
            cells.append("pole")
        except UndefinedAddedNoiseError:
            cells.append("inf")
        except BandwidthUndefinedError:
            cells.append("inapplicable")
    return cells


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Evaluate every observable at every (series, axis) point.

    Per-point failures never abort the sweep; they surface as sentinel
    cells.  Rows are ordered by series, then by axis index, so output is
    deterministic for a fixed config.
    """
    axis_vals = cfg.axis_values()
    series_list: tuple[Series | None, ...] = cfg.series or (None,)
    with_series = bool(cfg.series)

    columns = (
        (("series",) if with_series else ())
        + (cfg.axis_parameter,)
        + cfg.observables
    )
    rows: list[tuple[float | str, ...]] = []
    for series in series_list:
        for x in axis_vals:
            x = float(x)
            try:
                d, omega = _resolve_point(cfg, series, x)
            except _Inapplicable:
                cells: list[float | str] = ["inapplicable"] * len(cfg.observables)
            else:
                report = stability_eigen(build_drift(d))
                cells = _evaluate_cells(d, omega, cfg.observables, report.hurwitz)
            prefix: list[float | str] = [series.label] if with_series else []
            rows.append(tuple(prefix + [x] + cells))

    return SweepResult(
        columns=columns,
        rows=tuple(rows),
        metadata=_metadata(cfg),
    )


def _metadata(cfg: SweepConfig) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "generator": f"trimode {_VERSION}",
        "conventions": {
            "squeezing_db": "-10*log10(2*S)",
            "gain_db": "10*log10(G)",
            "vacuum_level": 0.5,
            "rate_units": "gamma_m",
        },
        "sentinels": list(SENTINELS),
        "base": {name: getattr(cfg.base, name) for name in _PARAM_FIELDS},
        "axis": {
            "parameter": cfg.axis_parameter,
            "start": cfg.start,
            "stop": cfg.stop,
            "points": cfg.points,
            "scale": cfg.scale,
        },
        "omega": cfg.omega,
        "observables": list(cfg.observables),
        "series": [
            {"label": s.label, **{k: v for k, v in s.overrides}} for s in cfg.series
        ],
    }


def emit(result: SweepResult, format: str, path: str | Path) -> None:
    """Write a sweep result to `path` as ``csv`` or ``json``.

    CSV starts with '#'-prefixed metadata comment lines, then a header row
    and one data row per point; floats use their shortest exact repr, so a
    given result always produces identical bytes.  JSON wraps the same
    content in a schema-versioned object and can be reloaded without loss
    (non-finite cells are already sentinel strings).
    """
    fmt = format.lower()
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown output format {format!r}")
    p = Path(path)
    if fmt == "csv":
        p.write_text(_render_csv(result), encoding="utf-8")
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "metadata": result.metadata,
            "columns": list(result.columns),
            "rows": [list(row) for row in result.rows],
        }
        p.write_text(
            json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n",
            encoding="utf-8",
        )


def _render_csv(result: SweepResult) -> str:
    lines = []
    meta = result.metadata
    lines.append(f"# generator: {meta['generator']}")
    lines.append(f"# schema_version: {meta['schema_version']}")
    for key, value in meta["conventions"].items():
        lines.append(f"# convention {key}: {value}")
    lines.append("# sentinels: " + " ".join(meta["sentinels"]))
    base = " ".join(f"{k}={v!r}" for k, v in meta["base"].items())
    lines.append(f"# base: {base}")
    ax = meta["axis"]
    lines.append(
        f"# axis: {ax['parameter']} {ax['scale']} "
        f"{ax['start']!r}..{ax['stop']!r} points={ax['points']}"
    )
    lines.append(f"# omega: {meta['omega']!r}")
    for s in meta["series"]:
        spec = " ".join(f"{k}={v!r}" for k, v in s.items() if k != "label")
        lines.append(f"# series {s['label']}: {spec}")
    out = "\n".join(lines) + "\n"

    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([cell if isinstance(cell, str) else repr(cell) for cell in row])
    return out + buf.getvalue()


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str


def check_config(cfg: SweepConfig) -> list[CheckOutcome]:
    """Run the cross-route invariant battery on a config's parameter space.

    Samples the first, middle and last axis point of every series and
    verifies, wherever the point is stable: closed-form susceptibility vs
    resolvent, closed-form on-resonance spectra vs the frequency route,
    vanishing on-resonance cross-correlations, and purity discriminants.
    """
    from .response import susceptibility_numeric

    idx = sorted({0, cfg.points // 2, cfg.points - 1})
    axis_vals = cfg.axis_values()
    series_list: tuple[Series | None, ...] = cfg.series or (None,)

    worst_chi = 0.0
    worst_res = 0.0
    worst_xp = 0.0
    sampled = 0
    skipped = 0
    failures: list[str] = []

    for series in series_list:
        for i in idx:
            x = float(axis_vals[i])
            try:
                d, _ = _resolve_point(cfg, series, x)
            except _Inapplicable:
                skipped += 1
                continue
            a = build_drift(d)
            if not stability_eigen(a).hurwitz:
                skipped += 1
                continue
            sampled += 1
            label = series.label if series is not None else "base"

            omegas = np.array([0.0, 0.37 * d.gamma_m, 2.0 * d.kappa])
            chi_c = susceptibility_closed(d, omegas)
            chi_n = susceptibility_numeric(a, omegas)
            scale = np.max(np.abs(chi_n))
            err = float(np.max(np.abs(chi_c - chi_n)) / scale)
            worst_chi = max(worst_chi, err)
            if err > 1e-9:
                failures.append(f"{label}@{x!r}: susceptibility routes differ by {err:.2e}")

            s0 = scattering_matrix(chi_c[0], d)
            g = gain_on_resonance(d)
            sq = squeezing_on_resonance(d)
            closed = np.array([g.gain_a, g.gain_m, g.gain_d, *sq])
            routes = np.array(
                [
                    *(float(gain_spectrum(s0, m)) for m in _MODES),
                    *(float(squeezing_spectrum(chi_c[0], d, m)) for m in _MODES),
                ]
            )
            err = float(np.max(np.abs(closed - routes) / np.maximum(1.0, np.abs(routes))))
            worst_res = max(worst_res, err)
            if err > 1e-9:
                failures.append(f"{label}@{x!r}: on-resonance closed forms differ by {err:.2e}")

            for m in _MODES:
                xp0 = abs(float(cross_correlation_spectrum(chi_c[0], d, m)))
                worst_xp = max(worst_xp, xp0)
                if xp0 > 1e-10:
                    failures.append(f"{label}@{x!r}: S_XP({m}) = {xp0:.2e} at omega=0")
                s_sq = float(squeezing_spectrum(chi_c[1], d, m))
                s_amp = float(amplified_spectrum(chi_c[1], d, m))
                s_xp = float(cross_correlation_spectrum(chi_c[1], d, m))
                try:
                    purity(s_sq, s_amp, s_xp, s_xp)
                except Exception as exc:  # noqa: BLE001 - reported, not raised
                    failures.append(f"{label}@{x!r}: purity({m}): {exc}")

    detail = f"{sampled} stable points sampled, {skipped} skipped"
    return [
        CheckOutcome(
            "susceptibility-route-equivalence",
            worst_chi <= 1e-9 and sampled > 0,
            f"worst relative deviation {worst_chi:.2e} ({detail})",
        ),
        CheckOutcome(
            "on-resonance-closed-forms",
            worst_res <= 1e-9 and sampled > 0,
            f"worst relative deviation {worst_res:.2e}",
        ),
        CheckOutcome(
            "cross-correlations-vanish-on-resonance",
            worst_xp <= 1e-10 and sampled > 0,
            f"worst |S_XP(0)| = {worst_xp:.2e}",
        ),
        CheckOutcome(
            "no-invariant-failures",
            not failures,
            "; ".join(failures) if failures else "all sampled points consistent",
        ),
    ]

from __future__ import annotations

import dataclasses
import json

import numpy as np
import pytest

from trimode import (
    ConfigError,
    DimensionlessParams,
    SweepConfig,
    Series,
    check_config,
    config_from_dict,
    emit,
    gain_on_resonance,
    load_config,
    run_sweep,
    squeezing_spectrum,
    susceptibility_closed,
)
from trimode.sweep import _evaluate_cells

GOOD_TOML = """\
observables = ["gain_optical", "stability"]

[base]
nbar_m = 100.0

[axis]
parameter = "c0"
start = 1.0
stop = 100.0
points = 5
scale = "log"

[[series]]
label = "plain"
c1 = 0.0

[[series]]
label = "driven"
c1 = 2.0
xi_m_ratio = 0.5
"""


def write_config(tmp_path, text):
    p = tmp_path / "sweep.toml"
    p.write_text(text, encoding="utf-8")
    return p


def test_load_config_happy_path(tmp_path):
    cfg = load_config(write_config(tmp_path, GOOD_TOML))
    assert cfg.base.nbar_m == 100.0
    assert cfg.axis_parameter == "c0"
    assert cfg.scale == "log"
    assert cfg.points == 5
    assert cfg.omega == 0.0
    assert cfg.observables == ("gain_optical", "stability")
    assert [s.label for s in cfg.series] == ["plain", "driven"]
    assert cfg.series[1].overrides == (("c1", 2.0), ("xi_m_ratio", 0.5))


@pytest.mark.parametrize(
    "mangle, location_part",
    [
        (lambda t: t.replace("[base]", "[extra]\nfoo = 1\n[base]"), "extra"),
        (lambda t: t.replace('parameter = "c0"', 'parameter = "c9"'), "axis.parameter"),
        (lambda t: t.replace('scale = "log"', 'scale = "cubic"'), "axis.scale"),
        (lambda t: t.replace("points = 5", "points = 0"), "axis.points"),
        (lambda t: t.replace("points = 5", "points = true"), "axis.points"),
        (lambda t: t.replace("start = 1.0", "start = 0.0"), "axis.scale"),
        (lambda t: t.replace('"gain_optical"', '"gain_sideways"'), "observables"),
        (lambda t: t.replace('label = "driven"', 'label = "plain"'), "series"),
        (lambda t: t.replace("c1 = 2.0", "c1 = -2.0"), "series[driven]"),
        (lambda t: t.replace("nbar_m = 100.0", "nbar_m = -1.0"), "base.nbar_m"),
        (lambda t: t.replace("[axis]", "[axis]\nwobble = 3"), "axis.wobble"),
    ],
)
def test_load_config_rejects_bad_input(tmp_path, mangle, location_part):
    path = write_config(tmp_path, mangle(GOOD_TOML))
    with pytest.raises(ConfigError) as excinfo:
        load_config(path)
    assert location_part in excinfo.value.location


def test_load_config_reports_toml_syntax_errors(tmp_path):
    path = write_config(tmp_path, "[axis\nbroken")
    with pytest.raises(ConfigError) as excinfo:
        load_config(path)
    assert "TOML parse error" in str(excinfo.value)
    assert excinfo.value.location == str(path)


def test_missing_axis_table_rejected():
    with pytest.raises(ConfigError) as excinfo:
        config_from_dict({"observables": ["stability"]})
    assert "missing [axis]" in str(excinfo.value)


def test_observables_must_be_a_list_of_strings():
    data = {
        "axis": {"parameter": "c0", "start": 1.0, "stop": 2.0, "points": 2},
        "observables": "gain_optical",
    }
    with pytest.raises(ConfigError) as excinfo:
        config_from_dict(data)
    assert excinfo.value.location == "observables"


def test_axis_values_linear_log_and_single_point():
    base = DimensionlessParams(c0=1.0, c1=0.0)
    lin = SweepConfig(
        base=base, axis_parameter="xi_m", start=0.0, stop=2.0, points=5,
        observables=("stability",),
    )
    assert np.array_equal(lin.axis_values(), np.linspace(0.0, 2.0, 5))
    log = SweepConfig(
        base=base, axis_parameter="c0", start=1.0, stop=100.0, points=3,
        scale="log", observables=("stability",),
    )
    assert np.allclose(log.axis_values(), [1.0, 10.0, 100.0], rtol=1e-12)
    single = SweepConfig(
        base=base, axis_parameter="c0", start=7.0, stop=9.0, points=1,
        observables=("stability",),
    )
    assert list(single.axis_values()) == [7.0]


def test_run_sweep_without_series_has_no_series_column():
    cfg = SweepConfig(
        base=DimensionlessParams(c0=1.0, c1=0.0),
        axis_parameter="c0", start=1.0, stop=10.0, points=4,
        observables=("gain_optical", "stability"),
    )
    result = run_sweep(cfg)
    assert result.columns == ("c0", "gain_optical", "stability")
    assert len(result.rows) == 4
    assert all(row[2] == 1.0 for row in result.rows)


def test_unstable_points_carry_the_sentinel():
    # xi_m = 5 needs c0 > 4 for stability (ceiling 1 + c0), so the first
    # axis point is unstable and the second fine
    cfg = SweepConfig(
        base=DimensionlessParams(c0=1.0, c1=0.0, xi_m=5.0),
        axis_parameter="c0", start=1.0, stop=10.0, points=2,
        observables=("gain_optical", "stability"),
    )
    rows = run_sweep(cfg).rows
    assert rows[0][1] == "unstable" and rows[0][2] == 0.0
    assert isinstance(rows[1][1], float) and rows[1][2] == 1.0


def test_exact_pole_point_reports_pole_sentinel():
    cfg = SweepConfig(
        base=DimensionlessParams(c0=50.0, c1=0.0, xi_m=51.0),
        axis_parameter="xi_m", start=51.0, stop=51.0, points=1,
        observables=("gain_optical",),
    )
    assert run_sweep(cfg).rows[0][1] == "pole"


def test_rule_without_solution_reports_inapplicable():
    # squeeze_case_i requires c1 >= c0 - 1; with c1 = 0 the axis point
    # c0 = 3 has no non-negative drive solving the tuning
    cfg = SweepConfig(
        base=DimensionlessParams(c0=1.0, c1=0.0),
        axis_parameter="c0", start=0.5, stop=3.0, points=2,
        observables=("squeezing_mech", "stability"),
        series=(Series(label="tuned", overrides=(("xi_rule", "squeeze_case_i"),)),),
    )
    rows = run_sweep(cfg).rows
    assert isinstance(rows[0][2], float)
    assert rows[1][2] == "inapplicable" and rows[1][3] == "inapplicable"


def test_divergence_sentinels_from_the_cell_evaluator():
    # on-resonance gain nulls sit beyond the stability ceiling, so sweeps
    # block them as unstable first; the evaluator itself must still map
    # them to the documented strings
    d = DimensionlessParams(c0=4.0, c1=3.0, xi_m=3.0)
    cells = _evaluate_cells(
        d, 0.0, ("gain_db_optical", "added_noise_optical", "stability"), True
    )
    assert cells == ["-inf", "inf", 1.0]


def test_ratio_overrides_recompute_per_axis_point():
    cfg = SweepConfig(
        base=DimensionlessParams(c0=1.0, c1=0.0),
        axis_parameter="c0", start=4.0, stop=16.0, points=2,
        observables=("gain_optical",),
        series=(Series(label="half", overrides=(("xi_m_ratio", 0.5),)),),
    )
    rows = run_sweep(cfg).rows
    for row, c0 in zip(rows, (4.0, 16.0)):
        expected = gain_on_resonance(
            DimensionlessParams(c0=c0, c1=0.0, xi_m=0.5 * (1.0 + c0))
        ).gain_a
        assert row[2] == expected


def test_omega_axis_matches_direct_spectrum_calls():
    d = DimensionlessParams(c0=25.0, c1=1.5, xi_m=6.0, xi_d=0.3, nbar_m=30.0)
    cfg = SweepConfig(
        base=d, axis_parameter="omega", start=0.0, stop=3.0, points=4,
        observables=("squeezing_mech",),
    )
    rows = run_sweep(cfg).rows
    for row in rows:
        omega = row[0]
        direct = float(
            squeezing_spectrum(susceptibility_closed(d, np.array(omega)), d, "mech")
        )
        assert row[1] == pytest.approx(direct, rel=1e-10)


def test_on_resonance_rows_do_not_depend_on_absolute_rates():
    cfg = SweepConfig(
        base=DimensionlessParams(c0=100.0, c1=0.0, nbar_m=100.0),
        axis_parameter="c1", start=0.01, stop=100.0, points=40, scale="log",
        observables=("squeezing_db_mech", "n_eff_mech", "stability"),
        series=(
            Series(label="tuned", overrides=(("xi_rule", "squeeze_case_i"),)),
            Series(label="plain"),
        ),
    )
    rescaled = dataclasses.replace(
        cfg,
        base=dataclasses.replace(
            cfg.base, kappa=731.0, gamma_m=2.3, gamma_d=0.17
        ),
    )
    assert run_sweep(cfg).rows == run_sweep(rescaled).rows


def test_emit_csv_is_deterministic_and_commented(tmp_path):
    cfg = load_config(write_config(tmp_path, GOOD_TOML))
    result = run_sweep(cfg)
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    emit(result, "csv", first)
    emit(run_sweep(cfg), "csv", second)
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text(encoding="utf-8").splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    data = [ln for ln in lines if not ln.startswith("#")]
    assert comments[0].startswith("# generator: trimode")
    assert any("sentinels:" in ln for ln in comments)
    # header plus one row per (series, point)
    assert len(data) == 1 + 2 * cfg.points
    assert data[0] == "series,c0,gain_optical,stability"


def test_emit_json_round_trips_rows(tmp_path):
    cfg = load_config(write_config(tmp_path, GOOD_TOML))
    result = run_sweep(cfg)
    out = tmp_path / "r.json"
    emit(result, "json", out)
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["schema_version"] == 1
    assert payload["columns"] == list(result.columns)
    assert [tuple(r) for r in payload["rows"]] == list(result.rows)
    assert payload["metadata"]["axis"]["scale"] == "log"


def test_emit_rejects_unknown_format(tmp_path):
    cfg = load_config(write_config(tmp_path, GOOD_TOML))
    with pytest.raises(ValueError):
        emit(run_sweep(cfg), "parquet", tmp_path / "x.bin")


def test_check_config_passes_on_sound_config(tmp_path):
    cfg = load_config(write_config(tmp_path, GOOD_TOML))
    outcomes = check_config(cfg)
    assert len(outcomes) == 4
    for outcome in outcomes:
        assert outcome.passed, f"{outcome.name}: {outcome.detail}"

from __future__ import annotations

import json

import pytest

from trimode.cli import PRESETS, main, preset_config

CONFIG = """\
observables = ["gain_optical", "squeezing_db_mech", "stability"]

[base]
c0 = 10.0
nbar_m = 50.0

[axis]
parameter = "xi_m"
start = 0.0
stop = 2.0
points = 7
"""


@pytest.fixture()
def config_path(tmp_path):
    p = tmp_path / "cfg.toml"
    p.write_text(CONFIG, encoding="utf-8")
    return p


def test_sweep_verb_writes_csv(tmp_path, config_path):
    out = tmp_path / "table.csv"
    assert main(["sweep", str(config_path), "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith("# generator: trimode")
    rows = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert rows[0] == "xi_m,gain_optical,squeezing_db_mech,stability"
    assert len(rows) == 1 + 7


def test_sweep_verb_writes_json(tmp_path, config_path):
    out = tmp_path / "table.json"
    assert main(["sweep", str(config_path), "--out", str(out), "--format", "json"]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["schema_version"] == 1
    assert len(payload["rows"]) == 7


def test_preset_verb_runs_bundled_config(tmp_path):
    out = tmp_path / "fig2a.csv"
    assert main(["preset", "fig2a", "--out", str(out)]) == 0
    rows = [
        ln
        for ln in out.read_text(encoding="utf-8").splitlines()
        if not ln.startswith("#")
    ]
    assert rows[0].startswith("series,")
    assert len(rows) > 100


def test_unknown_preset_fails_cleanly(tmp_path, capsys):
    code = main(["preset", "fig9z", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "unknown preset" in capsys.readouterr().err


def test_missing_config_file_is_a_config_error(tmp_path, capsys):
    code = main(["sweep", str(tmp_path / "nope.toml"), "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "cannot read config" in capsys.readouterr().err


def test_invalid_config_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text(
        CONFIG.replace('"gain_optical"', '"gain_upward"'), encoding="utf-8"
    )
    code = main(["sweep", str(bad), "--out", str(tmp_path / "x.csv")])
    assert code == 2
    err = capsys.readouterr().err
    assert "[observables]" in err and "gain_upward" in err


def test_unwritable_output_path(tmp_path, config_path, capsys):
    out = tmp_path / "no" / "such" / "dir" / "y.csv"
    code = main(["sweep", str(config_path), "--out", str(out)])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_check_verb_reports_all_pass(config_path, capsys):
    assert main(["check", str(config_path)]) == 0
    out_lines = capsys.readouterr().out.strip().splitlines()
    assert out_lines[-1] == "config ok"
    assert len(out_lines) == 5
    assert all(ln.startswith("PASS ") for ln in out_lines[:-1])


def test_missing_out_flag_exits_via_argparse(config_path):
    with pytest.raises(SystemExit):
        main(["sweep", str(config_path)])


def test_every_bundled_preset_parses():
    for fig_id in PRESETS:
        cfg = preset_config(fig_id)
        assert cfg.points >= 1
        assert cfg.observables

import csv

import pytest

from spinmaps.cli import (
    ConfigError,
    figure3_rows,
    figure5_rows,
    main,
    parse_config,
    serialize_config,
    spec_from_config,
)

GOOD_CONFIG = """\
scenario: distribute_single
network:
  kind: uniform_chain
  sites: 3
  coupling: 1.0
sites:
  sender: 0
  receiver: 2
initial:
  kind: werner
  p: 0.7
times:
  start: 0.0
  stop: 1.5
  points: 7
verify:
  oracle: true
  cptp: true
"""


def test_parse_and_roundtrip():
    cfg = parse_config(GOOD_CONFIG)
    assert cfg["scenario"] == "distribute_single"
    again = parse_config(serialize_config(cfg))
    assert again == cfg
    spec = spec_from_config(cfg)
    assert spec.network.n_sites == 3
    assert len(spec.times) == 7


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        parse_config(GOOD_CONFIG + "banana: 1\n")
    with pytest.raises(ConfigError):
        parse_config(GOOD_CONFIG.replace("  p: 0.7", "  p: 0.7\n  q: 3"))
    with pytest.raises(ConfigError):
        parse_config("scenario: quantum_teleportation\ntimes: {start: 0, stop: 1, points: 2}\n")
    with pytest.raises(ConfigError):
        parse_config("times: {start: 0, stop: 1, points: 2}\n")


def test_run_writes_csv(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text(GOOD_CONFIG)
    out = tmp_path / "out.csv"
    assert main(["run", str(config), "--output", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:4] == ["t", "f_re", "f_im", "f_abs"]
    assert len(rows) == 8  # header + 7 grid points
    assert "oracle_dev" in rows[0]


def test_run_is_byte_deterministic(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text(GOOD_CONFIG)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["run", str(config), "--output", str(out1)]) == 0
    assert main(["run", str(config), "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_malformed_config_exits_2_without_output(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("scenario: distribute_single\nbogus_key: 1\n")
    out = tmp_path / "never.csv"
    assert main(["run", str(config), "--output", str(out)]) == 2
    assert not out.exists()
    config.write_text(": not yaml [\n")
    assert main(["run", str(config), "--output", str(out)]) == 2
    assert not out.exists()
    assert main(["run", str(tmp_path / "missing.yaml"), "--output", str(out)]) == 2


def test_verify_passes_on_default_network(capsys):
    assert main(["verify", "--trials", "2"]) == 0  # default: 6 random sites
    captured = capsys.readouterr().out
    assert "ok   sector unitarity (k=1)" in captured
    assert "ok   two-qubit map vs oracle" in captured
    assert "verification passed" in captured


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SPINMAPS_OUTPUT_DIR", str(tmp_path))
    assert main(["figure", "3", "--points", "11"]) == 0
    assert (tmp_path / "figure3.csv").exists()


def test_figure3_dataset(tmp_path):
    out = tmp_path / "f3.csv"
    assert main(["figure", "3", "--points", "21", "--output", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["p", "f_abs", "ratio"]
    ps = sorted({float(r[0]) for r in rows[1:]})
    assert ps == [0.4, 0.5, 0.7, 0.9, 1.0]
    columns, data = figure3_rows(points=21)
    assert len(data) == 5 * 21


def test_figure5_dataset():
    columns, rows = figure5_rows(points=11)
    assert columns[0] == "family"
    families = {r[0] for r in rows}
    assert families == {"psi+", "phi+"}


def test_figure7_dataset(tmp_path):
    out = tmp_path / "f7.csv"
    assert main(["figure", "7", "--points", "25", "--output", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:3] == ["window", "t", "theta"]
    assert "tau4" in rows[0] and "c4" in rows[0]


def test_sweep_subcommand(tmp_path):
    config = tmp_path / "sweep.yaml"
    config.write_text(GOOD_CONFIG.replace("verify:\n  oracle: true\n  cptp: true\n", "")
                      + "sweep:\n  axis: p\n  values: [0.4, 0.9]\n")
    out = tmp_path / "sweep.csv"
    assert main(["sweep", str(config), "--output", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "p"
    assert {float(r[0]) for r in rows[1:]} == {0.4, 0.9}
    config.write_text(GOOD_CONFIG)
    assert main(["sweep", str(config), "--output", str(out)]) == 2


def test_incomplete_scenario_exits_2(tmp_path):
    config = tmp_path / "incomplete.yaml"
    config.write_text(GOOD_CONFIG.replace("sites:\n  sender: 0\n  receiver: 2\n", ""))
    out = tmp_path / "never.csv"
    assert main(["run", str(config), "--output", str(out)]) == 2
    assert not out.exists()
    assert main(["verify", "--sites", "2"]) == 2


def test_tolerance_flag(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text(GOOD_CONFIG)
    out = tmp_path / "out.csv"
    # absurdly tight tolerance turns numerical noise into a verification failure
    assert main(["run", str(config), "--output", str(out), "--tolerance", "1e-18"]) == 1

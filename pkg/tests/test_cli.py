import io
import json

import pytest

from riss_sim.cli import main
from riss_sim.scene import default_scenario, scenario_to_dict


def _run(argv, monkeypatch=None):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_place():
    code, out = _run(["place", "--n", "3", "--rr", "50", "--antennas", "64", "--slots", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "slot_index,x_m,sine"
    assert lines[2].startswith("1,1.5632634")
    assert float(lines[3].split(",")[2]) == pytest.approx(4 / 64)


def test_place_infeasible_exit_code():
    assert _run(["place", "--n", "3", "--rr", "50", "--antennas", "4"])[0] == 3
    assert _run(["place", "--n", "3", "--rr", "50", "--antennas", "64", "--slots", "40"])[0] == 3
    assert _run(["place", "--n", "5", "--rr", "50", "--antennas", "64", "--slots", "4"])[0] == 3


@pytest.mark.parametrize("mode", ["sensing", "comm"])
def test_allocate(mode, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario_to_dict(default_scenario(riss_x=(0.0, 3.1311214554257476)))))
    code, out = _run(["allocate", "--mode", mode, "--scenario", str(path)])
    assert code == 0
    rows = [l.split(",") for l in out.strip().splitlines()[1:]]
    assert sum(float(r[1]) for r in rows) == pytest.approx(1e-3)


def test_bad_scenario_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bs": {}}))
    assert _run(["allocate", "--mode", "sensing", "--scenario", str(bad)])[0] == 2
    assert _run(["allocate", "--mode", "sensing", "--scenario", str(tmp_path / "none.json")])[0] == 2


def test_sense_range_env_seed(monkeypatch):
    monkeypatch.setenv("RISS_SIM_SEED", "42")
    code, out = _run(["sense-range", "--samples", "5000"])
    assert code == 0
    assert "seed=42 seed_source=env:RISS_SIM_SEED" in out.splitlines()[0]
    assert out.splitlines()[2].startswith("0,14.41253")
    monkeypatch.setenv("RISS_SIM_SEED", "x")
    assert _run(["sense-range", "--samples", "10"])[0] == 2


def test_error_sweep():
    code, out = _run(["error-sweep", "--sigma-max", "0.1", "--steps", "3", "--samples", "2000"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1].startswith("sigma_rad,E_closed_w")
    assert len(lines) == 5
    assert _run(["error-sweep", "--sigma-max", "0.1", "--steps", "0"])[0] == 2


def test_figure_to_file(tmp_path):
    target = tmp_path / "fig4.csv"
    code, out = _run(["fig4", "--out", str(target), "--seed", "3"])
    assert code == 0 and out == ""
    text = target.read_text()
    assert "seed=3 seed_source=cli" in text
    assert len(text.strip().splitlines()) == 2 + 6 * 151

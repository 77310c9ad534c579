import dataclasses
import math

import numpy as np
import pytest

from riss_sim.experiments import (
    ExperimentSpec, default_spec, deploy, fig4_point, run,
)
from riss_sim.placement import orthogonal_grid
from riss_sim.scene import default_scenario


def test_deploy_uses_grid_slots_at_panel_elevation():
    sc = deploy(default_scenario(), 4, 31)
    grid = orthogonal_grid(31, 50.0, 64)
    xs = [r.position.x for r in sc.riss]
    assert all(np.any(np.isclose(x, grid.slots, rtol=0, atol=1e-12)) for x in xs)
    assert all(r.position.y == 50.0 and r.position.z == 15.0 for r in sc.riss)


def test_fig4_single_riss_matches_closed_form():
    sc = deploy(default_scenario(), 1, 31)
    rf = sc.rf
    from riss_sim.channel import make_channels
    (link,) = make_channels(sc)
    amp = link.rho_b2r * link.rho_r2u * 625 * math.sqrt(64) * math.sqrt(rf.total_power)
    assert fig4_point(sc) == pytest.approx(math.log2(1 + amp ** 2 / rf.noise_power), rel=1e-10)


def test_small_fig3_run_and_csv():
    spec = dataclasses.replace(default_spec("fig3"), n_riss=(1, 2), powers=(1e-3,), samples=4000)
    res = run(spec)
    assert res.header[:3] == ["n_riss", "power_w", "radius_m"]
    assert len(res.rows) == 2
    text = res.to_csv()
    assert text.startswith("# riss-sim ")
    assert "assumed defaults" in text
    assert np.all(res.column("A_union_m3") <= res.column("A_sum_m3"))


def test_small_fig5_run():
    spec = dataclasses.replace(default_spec("fig5"), n_riss=(2,), sigmas=(0.0, 0.1), samples=2000)
    res = run(spec)
    e_c, e_mc = res.column("E_closed_w"), res.column("E_mc_w")
    assert e_c[0] == pytest.approx(e_mc[0], rel=1e-10)
    assert e_c[1] < e_c[0]
    bound = res.column("ese_bound")
    assert np.all(res.column("ese_mc") <= bound * (1 + 1e-12) + 3 * res.column("ese_stderr"))


def test_spec_validation():
    sc = default_scenario()
    with pytest.raises(ValueError):
        ExperimentSpec("fig3", sc, (), (1e-3,), 20, 10)
    with pytest.raises(ValueError):
        ExperimentSpec("fig5", sc, (1,), (1e-3,), 20, 10)
    with pytest.raises(ValueError):
        default_spec("fig9")

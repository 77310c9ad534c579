import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riss_sim.beamforming import (
    bilinear_gain, configure, cross_term, effective_gain, optimal_precoder, optimal_theta,
    panel_gain, path_coefficients, path_phase, received_amplitude,
)
from riss_sim.channel import SteeringVector, make_channels, upa_steering
from riss_sim.errors import InvalidInputError
from riss_sim.placement import orthogonal_grid
from riss_sim.scene import default_scenario

coord = st.floats(-100, 100, allow_nan=False)


@settings(max_examples=40)
@given(coord, coord, st.floats(1, 80), st.floats(1e-6, 1e-1))
def test_optimal_phases_and_precoder_reach_the_bound(x_r, x_u, y_u, eta):
    sc = default_scenario(riss_x=(x_r,), user_position=(x_u, y_u, 0.0), nx=5, ny=4, antennas=16)
    (link,) = make_channels(sc)
    theta = optimal_theta(link.h, link.g.left)
    assert panel_gain(link.h, theta, link.g.left) == pytest.approx(20, rel=1e-12)
    w = optimal_precoder(link.g.right, eta)
    assert np.linalg.norm(w) ** 2 == pytest.approx(eta, rel=1e-12)
    assert abs(link.g.right.dense() @ w) == pytest.approx(math.sqrt(16 * eta), rel=1e-12)
    g = bilinear_gain(link, theta, w)
    assert abs(g) == pytest.approx(20 * 4 * math.sqrt(eta), rel=1e-10)
    dense = link.h.dense() @ np.diag(theta.dense()) @ np.outer(link.g.left.dense(), link.g.right.dense()) @ w
    assert dense == pytest.approx(g, rel=1e-10)


def test_effective_gain_consistent_with_links():
    sc = default_scenario(riss_x=(0.0, 3.13))
    links = make_channels(sc)
    c = path_coefficients(sc, links)
    for k in range(2):
        assert effective_gain(sc, k, 4.0) == pytest.approx(2 * c[k], rel=1e-14)
        assert c[k] == pytest.approx(links[k].rho_b2r * links[k].rho_r2u * 625 * 8, rel=1e-14)
    with pytest.raises(InvalidInputError):
        effective_gain(sc, 0, -1.0)


def test_exhaustive_quantized_phase_search_never_beats_closed_form():
    rng = np.random.default_rng(7)
    levels = np.exp(2j * np.pi * np.arange(16) / 16)
    for n in (1, 2, 3, 4):
        for _ in range(3):
            u_h, v_h, u_g, v_g = rng.uniform(-1, 1, 4)
            h = upa_steering(u_h, v_h, n, 1)
            a = upa_steering(u_g, v_g, n, 1)
            best = abs(panel_gain(h, optimal_theta(h, a), a))
            hd, ad = h.dense(), a.dense()
            brute = max(abs(np.sum(hd * np.array(t) * ad))
                        for t in itertools.product(levels, repeat=n))
            assert brute <= best + 1e-12
            assert best == pytest.approx(n, rel=1e-12)


def test_unit_modulus_enforced():
    from riss_sim.beamforming import PhaseConfig
    bad = SteeringVector((np.array([1.0, 0.5 + 0j]),))
    with pytest.raises(InvalidInputError):
        PhaseConfig((bad,), (0.0,), (np.ones(2),), (1.0,))


def test_cross_terms_vanish_on_grid():
    g = orthogonal_grid(31, 50.0, 64)
    sc = default_scenario(riss_x=tuple(g.slots[[0, 7, 19, 30]]))
    links = make_channels(sc)
    cfg = configure(sc, [1e-3] * 4, links=links)
    for k in range(4):
        own = abs(cross_term(links, cfg, k, k))
        assert own == pytest.approx(625 * 8 * math.sqrt(1e-3), rel=1e-10)
        for i in range(4):
            if i != k:
                assert abs(cross_term(links, cfg, k, i)) < 1e-9 * own


def test_off_grid_cross_terms_leak():
    sc = default_scenario(riss_x=(0.0, 0.8))
    links = make_channels(sc)
    cfg = configure(sc, [1e-3, 1e-3], links=links)
    assert abs(cross_term(links, cfg, 0, 1)) > 1e-3 * abs(cross_term(links, cfg, 0, 0))


def test_compensation_makes_paths_coherent():
    g = orthogonal_grid(31, 50.0, 64)
    sc = default_scenario(riss_x=tuple(g.slots[[0, 15, 30]]))
    links = make_channels(sc)
    c = path_coefficients(sc, links)
    powers = [2e-4, 3e-4, 5e-4]
    y = received_amplitude(sc, configure(sc, powers, links=links), links)
    assert abs(y) == pytest.approx(float(np.sum(c * np.sqrt(powers))), rel=1e-9)
    y_raw = received_amplitude(sc, configure(sc, powers, compensate=False, links=links), links)
    assert abs(y_raw) <= abs(y) * (1 + 1e-12)
    phases = [path_phase(sc, k, links) for k in range(3)]
    assert all(0 <= p < 2 * math.pi for p in phases)


def test_configure_rejects_wrong_power_count():
    sc = default_scenario(riss_x=(0.0, 3.13))
    with pytest.raises(InvalidInputError):
        configure(sc, [1.0])

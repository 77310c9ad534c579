
import pytest
from hypothesis import given, settings, strategies as st

from oracles import detect_radius_dense, two_hemisphere_union
from riss_sim.errors import InvalidInputError
from riss_sim.scene import default_scenario
from riss_sim.sensing_range import (
    coverage, detect_radius, hemisphere_volume, sum_volume, union_volume,
)


def test_default_radius_matches_dense_oracle():
    sc = default_scenario()
    r = detect_radius(sc, 0, 1e-3)
    assert r == pytest.approx(14.412533459740667, rel=1e-12)
    assert r == pytest.approx(detect_radius_dense(sc, 0, 1e-3, 10.0), rel=1e-10)


@given(st.floats(1e-8, 1.0), st.floats(1.0, 1e3))
def test_radius_scaling(eta, gamma):
    sc = default_scenario()
    r = detect_radius(sc, 0, eta, gamma)
    assert detect_radius(sc, 0, 16 * eta, gamma) == pytest.approx(2 * r, rel=1e-12)
    assert detect_radius(sc, 0, eta, 16 * gamma) == pytest.approx(r / 2, rel=1e-12)


def test_radius_edge_cases():
    sc = default_scenario()
    assert detect_radius(sc, 0, 0.0) == 0.0
    with pytest.raises(InvalidInputError):
        detect_radius(sc, 0, -1.0)
    with pytest.raises(InvalidInputError):
        detect_radius(sc, 0, 1.0, gamma=0.0)


def test_single_hemisphere():
    vol, se = union_volume([(0, 0, 15)], [10.0], samples=10 ** 6, seed=1, clip=False)
    assert abs(vol - hemisphere_volume(10.0)) <= 3 * se


@pytest.mark.parametrize("d", [0.0, 4.0, 10.0, 19.5])
def test_two_hemispheres_against_lens_oracle(d):
    vol, se = union_volume([(0, 0, 15), (d, 0, 15)], [10.0, 8.0], samples=10 ** 6,
                           seed=2, clip=False)
    assert abs(vol - two_hemisphere_union(10.0, 8.0, d)) <= 3 * se


def test_disjoint_hemispheres_add():
    vol, se = union_volume([(0, 0, 0), (50, 0, 0)], [5.0, 7.0], samples=10 ** 6, seed=3, clip=False)
    assert abs(vol - sum_volume([5.0, 7.0])) <= 3 * se


def test_zero_radius_and_clip_bounds():
    assert union_volume([(0, 0, 0)], [0.0]) == (0.0, 0.0)
    with pytest.raises(InvalidInputError):
        union_volume([(0, 0, 0)], [-1.0])
    v, _ = union_volume([(0, 0, 0), (1, 0, 0)], [5.0, 5.0], samples=1000, seed=0)
    assert hemisphere_volume(5.0) <= v <= sum_volume([5.0, 5.0])


def test_monotone_in_radius_with_fixed_box():
    box = ((-30, -30, -30), (40, 30, 0))
    prev = 0.0
    for r in (4.0, 6.0, 8.0, 12.0):
        v, _ = union_volume([(0, 0, 0), (9, 0, 0)], [r, r], samples=2 ** 16, seed=4,
                            bounds=box, clip=False)
        assert v >= prev
        prev = v


@settings(max_examples=10, deadline=None)
@given(st.lists(st.floats(0.5, 20), min_size=1, max_size=5), st.integers(0, 100))
def test_worker_count_does_not_change_result(radii, seed):
    centers = [(3.0 * i, 0.0, 15.0) for i in range(len(radii))]
    a = union_volume(centers, radii, samples=70_000, seed=seed, workers=1)
    b = union_volume(centers, radii, samples=70_000, seed=seed, workers=3)
    assert a == b


def test_coverage_report():
    sc = default_scenario(riss_x=(0.0, 1.563263498701806))
    rep = coverage(sc, [5e-4, 5e-4], samples=50_000)
    assert rep.radii.shape == (2,)
    assert rep.union_volume <= rep.sum_volume
    assert rep.sum_volume == pytest.approx(sum_volume(rep.radii))
    with pytest.raises(InvalidInputError):
        coverage(sc, [1e-3])

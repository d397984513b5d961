import numpy as np
import pytest

from tumorage.inversion import DOWN, UP, crossing_ages, crossing_times, diameter_buckets, occupancy_ages
from tumorage.models.rdt_mixture_model import default_model
from tumorage.sim import GrowthHistory, SimulationConfig, simulate_ensemble
from tumorage.utils.geometry import diameter_to_volume, volume_to_diameter
from tumorage.utils.options import DEFAULT_GRID

H = 245.0 / 365.0


def _history(volumes, h=H):
    volumes = np.asarray(volumes, dtype=np.float64)
    log2_v = np.log2(volumes)
    return GrowthHistory(
        history_id=0, times=np.arange(len(volumes)) * h, volumes=volumes, rdts=np.diff(log2_v) / h)


def test_single_up_crossing():
    """Test crossing_times: 1 -> 4 mL passes 2 mL half way through the interval"""
    history = _history([1.0, 4.0])
    crossings = crossing_times(history, volume_to_diameter(2.0))
    assert len(crossings) == 1
    age, direction = crossings[0]
    assert direction == UP
    assert age == pytest.approx(0.3356, abs=1e-4)
    assert age == pytest.approx(H / 2, abs=1e-9)


def test_threshold_below_start():
    """Test crossing_times: threshold below the starting volume is never crossed"""
    history = _history([1.0, 4.0, 16.0])
    assert crossing_times(history, volume_to_diameter(0.5)) == []


def test_up_then_down():
    """Test crossing_times: growth followed by shrinkage crosses twice"""
    history = _history([1.0, 4.0, 1.0])
    crossings = crossing_times(history, volume_to_diameter(2.0))
    assert [direction for _, direction in crossings] == [UP, DOWN]
    assert crossings[0][0] == pytest.approx(0.5 * H, abs=1e-9)
    assert crossings[1][0] == pytest.approx(1.5 * H, abs=1e-9)


def test_boundary_hit_counts_once():
    """Test crossing_ages: a threshold equal to an interval end is one crossing"""
    history = _history([1.0, 2.0, 4.0])
    ages, is_up = crossing_ages(history, [1.0])[0]
    assert ages.tolist() == pytest.approx([H])
    assert is_up.tolist() == [True]

    # falling onto the threshold and rising again: one downward crossing
    history = _history([4.0, 2.0, 4.0])
    ages, is_up = crossing_ages(history, [1.0])[0]
    assert is_up.tolist() == [False]
    assert ages.tolist() == pytest.approx([H])


def test_first_up_only():
    """Test crossing_ages: keep the first upward crossing only"""
    history = _history([1.0, 4.0, 1.0, 4.0])
    ages, is_up = crossing_ages(history, [1.0])[0]
    assert is_up.tolist() == [True, False, True]
    ages, is_up = crossing_ages(history, [1.0], first_up_only=True)[0]
    assert ages.tolist() == pytest.approx([0.5 * H])
    assert is_up.tolist() == [True]


def test_crossing_parity():
    """Test crossing_ages: odd number of crossings iff the history ends above the threshold"""
    config = SimulationConfig(n_histories=300, seed=5, v_max=50.0)
    ensemble = simulate_ensemble(default_model(), config)
    targets = np.log2(diameter_to_volume(np.array([0.5, 1.0, 2.0, 4.0])))
    for history in ensemble:
        for target, (ages, is_up) in zip(targets, crossing_ages(history, targets)):
            assert (len(ages) % 2 == 1) == (history.log2_volumes[-1] > target)
            assert np.all(np.diff(ages) >= 0)
            # directions alternate, starting upward
            assert is_up.tolist() == [k % 2 == 0 for k in range(len(ages))]


def test_crossings_match_fine_time_grid():
    """Test crossing_ages: agree with a brute-force scan of each interval"""
    config = SimulationConfig(n_histories=100, seed=9)
    ensemble = simulate_ensemble(default_model(), config)
    target = np.log2(diameter_to_volume(3.0))
    fractions = np.arange(1001) / 1000.0
    for history in ensemble:
        expected = []
        for t, rdt, log2_v in zip(history.times[:-1], history.rdts, history.log2_volumes[:-1]):
            path = log2_v + rdt * config.interval_h * fractions - target
            change = np.flatnonzero(np.sign(path[:-1]) != np.sign(path[1:]))
            expected.extend((t + config.interval_h * fractions[change]).tolist())
        ages, _ = crossing_ages(history, [target])[0]
        assert len(ages) == len(expected)
        assert np.allclose(ages, expected, atol=1e-3)


def test_diameter_buckets():
    """Test diameter_buckets: rounded 10 ln d, one bucket per default grid row"""
    assert diameter_buckets(1.0) == 0
    assert diameter_buckets(DEFAULT_GRID).tolist() == [-12, -9, -7, -4, 0, 3, 6, 9, 12, 15, 18, 21, 24, 27]
    assert diameter_buckets([1.0, np.e], factor=5).tolist() == [0, 5]


def test_occupancy_ages():
    """Test occupancy_ages: each interval counts once, under its starting bucket, at its closing age"""
    # 1 mL is 1.24 cm (bucket 2), 4 mL is 1.97 cm (bucket 7)
    history = _history([1.0, 4.0, 1.0])
    found = occupancy_ages(history, [2, 7, 5])
    assert found[0].tolist() == pytest.approx([H])
    assert found[1].tolist() == pytest.approx([2 * H])
    assert found[2].size == 0

    history = _history([1.0, 1.1, 1.05, 4.0])
    assert occupancy_ages(history, [2])[0].tolist() == pytest.approx([H, 2 * H, 3 * H])
    assert [ages.size for ages in occupancy_ages(_history([1.0]), [2, 7])] == [0, 0]

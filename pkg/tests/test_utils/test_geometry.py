import math
import numpy as np
import pytest

from tumorage.utils.errors import DomainError
from tumorage.utils.geometry import diameter_to_volume, volume_to_diameter


def test_diameter_to_volume():
    """Test geometry: diameter_to_volume"""
    assert diameter_to_volume(0.27) == pytest.approx(0.0103, abs=5e-5)
    assert diameter_to_volume(20.0) == pytest.approx(4188.79, abs=0.01)
    unit = 2 * (3 / (4 * math.pi))**(1 / 3)
    assert diameter_to_volume(unit) == pytest.approx(1.0, rel=1e-12)
    assert isinstance(diameter_to_volume(1.0), float)

    out = diameter_to_volume(np.array([1.0, 2.0]))
    assert out.shape == (2, )
    assert out[1] / out[0] == pytest.approx(8.0)


def test_volume_to_diameter():
    """Test geometry: volume_to_diameter"""
    assert volume_to_diameter(4188.79) == pytest.approx(20.0, abs=1e-5)
    assert volume_to_diameter(1.0) == pytest.approx(1.2407, abs=1e-4)
    assert volume_to_diameter(diameter_to_volume(5.0)) == pytest.approx(5.0, rel=1e-12)


def test_roundtrip_and_monotonicity():
    """Test geometry: exact inverse pair, strictly increasing"""
    d = np.geomspace(1e-3, 1e3, 2001)
    back = volume_to_diameter(diameter_to_volume(d))
    assert np.max(np.abs(back - d) / d) < 1e-12
    assert np.all(np.diff(diameter_to_volume(d)) > 0)
    assert np.all(np.diff(volume_to_diameter(d)) > 0)


@pytest.mark.parametrize('bad', [0.0, -1.0, float('nan'), float('inf')])
def test_invalid_input(bad):
    """Test geometry: non-positive or non-finite input"""
    with pytest.raises(DomainError):
        diameter_to_volume(bad)
    with pytest.raises(DomainError):
        volume_to_diameter(bad)

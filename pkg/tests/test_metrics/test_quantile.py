import math
import numpy as np
import pytest

from tumorage.metrics import calculate_metric, percentiles
from tumorage.utils.errors import DomainError


def test_percentiles():
    """Test metric: percentiles"""
    assert percentiles([1, 2, 3, 4, 5], [0.5]) == [3.0]
    assert percentiles([1, 2, 3, 4], [0.5]) == [2.5]
    assert percentiles([4, 1, 3, 2], [0.25]) == [pytest.approx(1.75)]
    assert percentiles([10.1]) == [10.1] * 5

    out = percentiles(np.random.default_rng(0).normal(size=1000))
    assert len(out) == 5
    assert all(a <= b for a, b in zip(out, out[1:]))


def test_percentiles_exponential_median():
    """Test metric: median of 1e6 standard exponential draws"""
    x = np.random.default_rng(1).exponential(size=10**6)
    assert percentiles(x, [0.5])[0] == pytest.approx(math.log(2), abs=0.005)


def test_percentiles_errors():
    """Test metric: percentiles domain errors"""
    with pytest.raises(DomainError):
        percentiles([])
    with pytest.raises(DomainError):
        percentiles([1.0, 2.0], [0.0])
    with pytest.raises(DomainError):
        percentiles([1.0, 2.0], [1.0])
    with pytest.raises(DomainError):
        percentiles([1.0, float('nan')], [0.5])


def test_calculate_metric():
    """Test metric: dispatch through the metric registry"""
    out = calculate_metric(dict(ages=[1, 2, 3]), dict(type='percentiles', levels=[0.5]))
    assert out == [2.0]
    with pytest.raises(KeyError):
        calculate_metric(dict(ages=[1]), dict(type='unknown'))

import numpy as np
import pytest

from tumorage.inversion import AgeRow, AgeTable, DiameterGrid
from tumorage.report import AgeQueryResult, query_age
from tumorage.utils.errors import DomainError, OutOfRangeError


def _table():
    rows = [
        AgeRow(diameter=1.0, ages=np.zeros(10), values=[4.0, 7.0, 10.0, 13.0, 17.0]),
        AgeRow(diameter=4.0, ages=np.zeros(10), values=[8.0, 11.0, 14.0, 17.0, 23.0]),
        AgeRow(diameter=16.0, ages=np.zeros(0)),
    ]
    return AgeTable(grid=DiameterGrid((1.0, 4.0, 16.0)), rows=rows)


def test_query_grid_row():
    """Test query_age: a grid diameter returns its row"""
    result = query_age(_table(), 4.0)
    assert result.diameter == 4.0
    assert result.median == 14.0
    assert result.iqr == (11.0, 17.0)
    assert result.ci90 == (8.0, 23.0)
    assert result.to_dict()['iqr'] == [11.0, 17.0]


def test_query_interpolates_in_log_diameter():
    """Test query_age: the geometric midpoint averages the neighbouring rows"""
    result = query_age(_table(), 2.0)
    assert result.median == pytest.approx(12.0)
    assert result.iqr == pytest.approx((9.0, 15.0))
    assert result.ci90 == pytest.approx((6.0, 20.0))

    # a quarter of the way in log(d)
    result = query_age(_table(), 2.0**0.5)
    assert result.median == pytest.approx(11.0)


def test_query_out_of_range():
    """Test query_age: no extrapolation and no missing rows"""
    table = _table()
    for d in (0.5, 25.0, 16.0, 8.0):
        with pytest.raises(OutOfRangeError):
            query_age(table, d)
    for d in (0.0, -1.0, float('nan')):
        with pytest.raises(DomainError):
            query_age(table, d)


def test_query_result_ordering():
    """Test AgeQueryResult: percentiles must be ordered"""
    with pytest.raises(DomainError):
        AgeQueryResult(diameter=1.0, median=5.0, iqr=(6.0, 7.0), ci90=(1.0, 9.0))

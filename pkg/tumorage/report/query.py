import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from tumorage.inversion import level_columns
from tumorage.utils.errors import DomainError, OutOfRangeError

_QUERY_LEVELS = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class AgeQueryResult():
    """Age summary of a tumor of a given diameter, in years since the origin."""

    diameter: float
    median: float
    iqr: tuple
    ci90: tuple

    def __post_init__(self):
        low, q1, q3, high = self.ci90[0], self.iqr[0], self.iqr[1], self.ci90[1]
        if not low <= q1 <= self.median <= q3 <= high:
            raise DomainError(f'Percentiles out of order for {self.diameter} cm: '
                              f'{low}, {q1}, {self.median}, {q3}, {high}.')

    def to_dict(self):
        return OrderedDict(
            diameter_cm=self.diameter, median=self.median, iqr=list(self.iqr), ci90=list(self.ci90))


def row_percentiles(table, row):
    if row.missing:
        raise OutOfRangeError(f'The age table has no crossings at {row.diameter:g} cm.')
    by_name = dict(zip(table.columns, row.values))
    try:
        return [by_name[name] for name in level_columns(_QUERY_LEVELS)]
    except KeyError as e:
        raise DomainError(f'The age table lacks the percentile column {e.args[0]}.') from e


def query_age(table, d):
    """Look up the age distribution of a tumor of diameter ``d``.

    Grid diameters return their row unchanged. Between grid rows each
    percentile is interpolated linearly in ``log(d)``; there is no
    extrapolation beyond the grid.

    Args:
        table (AgeTable): The inverted table.
        d (float): Diameter in cm.

    Returns:
        AgeQueryResult: Median, interquartile range and 90% interval.
    """
    d = float(d)
    if not math.isfinite(d) or d <= 0:
        raise DomainError(f'Diameter must be positive and finite, got {d}.')
    grid = np.asarray(table.grid.thresholds)
    if d < grid[0] or d > grid[-1]:
        raise OutOfRangeError(f'Diameter {d:g} cm is outside the table range [{grid[0]:g}, {grid[-1]:g}] cm.')

    hit = np.flatnonzero(grid == d)
    if hit.size:
        values = row_percentiles(table, table.rows[hit[0]])
    else:
        i = int(np.searchsorted(grid, d)) - 1
        lower = row_percentiles(table, table.rows[i])
        upper = row_percentiles(table, table.rows[i + 1])
        w = (math.log(d) - math.log(grid[i])) / (math.log(grid[i + 1]) - math.log(grid[i]))
        values = [(1 - w) * a + w * b for a, b in zip(lower, upper)]
    p5, p25, p50, p75, p95 = values
    return AgeQueryResult(diameter=d, median=p50, iqr=(p25, p75), ci90=(p5, p95))

from .age_table import PERCENTILE_COLUMNS, AgeRow, AgeTable, DiameterGrid, build_age_table, level_columns
from .crossing import (BUCKET_FACTOR, CROSSING_MODES, DOWN, UP, crossing_ages, crossing_times, diameter_buckets,
                       occupancy_ages)

__all__ = [
    'PERCENTILE_COLUMNS', 'AgeRow', 'AgeTable', 'DiameterGrid', 'build_age_table', 'level_columns', 'BUCKET_FACTOR',
    'CROSSING_MODES', 'DOWN', 'UP', 'crossing_ages', 'crossing_times', 'diameter_buckets', 'occupancy_ages'
]

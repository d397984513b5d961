import csv
import json
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from tumorage.inversion.crossing import BUCKET_FACTOR, CROSSING_MODES, crossing_ages, diameter_buckets, occupancy_ages
from tumorage.metrics import DEFAULT_LEVELS, percentiles
from tumorage.utils import get_root_logger
from tumorage.utils.errors import ConfigError, DomainError, IngestError
from tumorage.utils.geometry import diameter_to_volume, volume_to_diameter

PERCENTILE_COLUMNS = ('p5', 'p25', 'p50', 'p75', 'p95')


def level_columns(levels):
    """Column names of percentile levels, e.g. 0.05 -> 'p5'."""
    return tuple(f'p{level * 100:g}' for level in levels)


@dataclass(frozen=True)
class DiameterGrid():
    """Strictly increasing threshold diameters, cm."""

    thresholds: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.thresholds)
        object.__setattr__(self, 'thresholds', values)
        if not values:
            raise DomainError('A diameter grid needs at least one threshold.')
        if not all(np.isfinite(v) and v > 0 for v in values):
            raise DomainError(f'Grid diameters must be positive and finite, got {list(values)}.')
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError(f'Grid diameters must be strictly increasing, got {list(values)}.')

    def __len__(self):
        return len(self.thresholds)

    def __iter__(self):
        return iter(self.thresholds)

    @property
    def log2_volumes(self):
        return np.log2(diameter_to_volume(np.asarray(self.thresholds)))

    def check_within(self, v0, v_max):
        """Raise DomainError unless every threshold lies strictly between d(v0) and d(v_max)."""
        d0, d_max = volume_to_diameter(v0), volume_to_diameter(v_max)
        if self.thresholds[0] <= d0 or self.thresholds[-1] >= d_max:
            raise DomainError(f'Grid diameters must lie in ({d0:.4f}, {d_max:.4f}) cm, '
                              f'got [{self.thresholds[0]}, {self.thresholds[-1]}].')

    @classmethod
    def from_options(cls, opt):
        """Grid of ``opt['inversion']['grid']``, checked against the simulated volume range."""
        try:
            grid = cls(tuple(opt['inversion']['grid']))
            grid.check_within(float(opt['simulation']['v0']), float(opt['simulation']['v_max']))
        except (DomainError, TypeError, ValueError) as e:
            raise ConfigError(f'Invalid inversion grid: {e}') from e
        return grid


@dataclass
class AgeRow():
    """Crossing ages at one threshold and their percentiles (None when no crossing)."""

    diameter: float
    ages: np.ndarray = field(repr=False)
    values: list = None

    @property
    def n_crossings(self):
        return int(self.ages.size)

    @property
    def missing(self):
        return self.values is None

    def as_dict(self, columns=PERCENTILE_COLUMNS):
        row = OrderedDict(diameter_cm=self.diameter)
        for name, value in zip(columns, self.values or [None] * len(columns)):
            row[name] = value
        row['n_crossings'] = self.n_crossings
        return row


@dataclass
class AgeTable():
    """Distribution of age given diameter, one row per grid threshold.

    Ages are years since the simulated origin, when the volume was ``v0``.
    """

    grid: DiameterGrid
    rows: list
    levels: tuple = DEFAULT_LEVELS
    crossings: str = 'all'
    n_histories: int = 0
    n_truncated: int = 0

    @property
    def columns(self):
        return level_columns(self.levels)

    def row(self, diameter):
        for row in self.rows:
            if row.diameter == diameter:
                return row
        raise KeyError(f'No row for diameter {diameter} cm.')

    @property
    def missing_rows(self):
        return [row.diameter for row in self.rows if row.missing]

    def write_csv(self, path):
        """Write ``diameter_cm, p5, p25, p50, p75, p95, n_crossings`` rows; missing rows have empty percentiles."""
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['diameter_cm', *self.columns, 'n_crossings'])
            for row in self.rows:
                values = row.values or [None] * len(self.columns)
                cells = ['' if v is None else f'{v:.6f}' for v in values]
                writer.writerow([f'{row.diameter:g}', *cells, row.n_crossings])

    def to_dict(self, config=None):
        out = OrderedDict(
            rows=[row.as_dict(self.columns) for row in self.rows],
            levels=list(self.levels),
            crossings=self.crossings,
            n_histories=self.n_histories,
            n_truncated=self.n_truncated)
        if config is not None:
            out['config'] = config
        return out

    def write_json(self, path, config=None):
        with open(path, 'w') as f:
            json.dump(self.to_dict(config), f, indent=2)
            f.write('\n')

    @classmethod
    def read_json(cls, path):
        """Load a table written by :meth:`write_json`; crossing ages are not stored, only their count."""
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            # ValueError covers JSONDecodeError and UnicodeDecodeError
            raise IngestError(f'Cannot read age table {path}: {e}') from e
        try:
            levels = tuple(float(level) for level in data.get('levels', DEFAULT_LEVELS))
            rows = []
            for item in data['rows']:
                values = [item[name] for name in level_columns(levels)]
                rows.append(
                    AgeRow(
                        diameter=float(item['diameter_cm']),
                        ages=np.full(int(item['n_crossings']), np.nan),
                        values=None if any(v is None for v in values) else [float(v) for v in values]))
            return cls(
                grid=DiameterGrid(tuple(row.diameter for row in rows)),
                rows=rows,
                levels=levels,
                crossings=data.get('crossings', 'all'),
                n_histories=int(data.get('n_histories', 0)),
                n_truncated=int(data.get('n_truncated', 0)))
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            raise IngestError(f'Age table {path} is malformed: {e!r}') from e


def build_age_table(ensemble, grid, crossings='all', levels=DEFAULT_LEVELS, v_max=None, bucket_factor=BUCKET_FACTOR):
    """Pool crossing ages per threshold and summarize them by percentiles.

    Args:
        ensemble (list[GrowthHistory]): Simulated histories, all started at
            the same volume.
        grid (DiameterGrid): Threshold diameters, checked to lie strictly
            between the starting diameter and the diameter of ``v_max``.
        crossings (str): ``'all'`` pools every crossing in both directions;
            ``'first_up'`` keeps only the first upward crossing per history;
            ``'occupancy'`` pools the closing ages of the intervals that start
            in the log-diameter bucket of each threshold.
        levels (sequence[float]): Percentile levels. Default: 5/25/50/75/95.
        v_max (float | None): Exit volume of the simulation, mL. Default: the
            largest volume in the ensemble.
        bucket_factor (float): Buckets per unit of ``ln d`` for
            ``'occupancy'``. Default: 10.

    Returns:
        AgeTable: The table, rows in grid order.
    """
    if len(ensemble) == 0:
        raise DomainError('build_age_table needs a nonempty ensemble.')
    if crossings not in CROSSING_MODES:
        raise DomainError(f'crossings must be one of {CROSSING_MODES}, got {crossings!r}.')
    if not bucket_factor > 0:
        raise DomainError(f'bucket_factor must be positive, got {bucket_factor}.')
    if v_max is None:
        v_max = max(float(history.volumes.max()) for history in ensemble)
    grid.check_within(float(ensemble[0].volumes[0]), v_max)

    targets = grid.log2_volumes
    buckets = diameter_buckets(grid.thresholds, bucket_factor)
    logger = get_root_logger()
    if crossings == 'occupancy' and len(set(buckets.tolist())) < len(buckets):
        logger.warning('Several grid diameters share a log-diameter bucket; their rows are identical.')
    per_threshold = [[] for _ in targets]
    for history in ensemble:
        if crossings == 'occupancy':
            found = occupancy_ages(history, buckets, bucket_factor)
        else:
            found = [ages for ages, _ in crossing_ages(history, targets, first_up_only=crossings == 'first_up')]
        for j, ages in enumerate(found):
            per_threshold[j].append(ages)

    rows = []
    for diameter, parts in zip(grid.thresholds, per_threshold):
        ages = np.concatenate(parts)
        if ages.size == 0:
            logger.warning(f'No crossing at {diameter:g} cm; the row is left empty.')
            rows.append(AgeRow(diameter=diameter, ages=ages))
        else:
            rows.append(AgeRow(diameter=diameter, ages=ages, values=percentiles(ages, levels)))
    n_truncated = sum(1 for history in ensemble if history.truncated)
    return AgeTable(
        grid=grid,
        rows=rows,
        levels=tuple(levels),
        crossings=crossings,
        n_histories=len(ensemble),
        n_truncated=n_truncated)

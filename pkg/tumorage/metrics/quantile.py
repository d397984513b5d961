import numpy as np

from tumorage.utils.errors import DomainError
from tumorage.utils.registry import METRIC_REGISTRY

# 5th, 25th, 50th, 75th and 95th percentiles: median, IQR and 90% interval
DEFAULT_LEVELS = (0.05, 0.25, 0.5, 0.75, 0.95)


@METRIC_REGISTRY.register()
def percentiles(ages, levels=DEFAULT_LEVELS, **kwargs):
    """Empirical quantiles by linear interpolation between order statistics.

    For ``n`` sorted values the quantile at level ``q`` sits at position
    ``q * (n - 1)``, interpolating linearly between its neighbours.

    Args:
        ages (array_like): Observations, e.g. crossing ages in years.
        levels (sequence[float]): Levels in (0, 1).

    Returns:
        list[float]: One quantile per level, nondecreasing in level.
    """
    values = np.asarray(ages, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError('percentiles needs at least one observation.')
    if np.any(np.isnan(values)):
        raise DomainError('percentiles is undefined for NaN observations.')
    levels = np.asarray(levels, dtype=np.float64)
    if np.any(~(levels > 0)) or np.any(~(levels < 1)):
        raise DomainError(f'Percentile levels must lie in (0, 1), got {levels.tolist()}.')
    return np.quantile(values, levels, method='linear').tolist()

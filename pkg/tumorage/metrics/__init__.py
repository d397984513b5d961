from copy import deepcopy

from tumorage.utils.registry import METRIC_REGISTRY
from .goodness_of_fit import empirical_cdf, ks_distance
from .quantile import DEFAULT_LEVELS, percentiles

__all__ = ['percentiles', 'ks_distance', 'empirical_cdf', 'calculate_metric', 'DEFAULT_LEVELS']


def calculate_metric(data, opt):
    """Calculate metric from data and options.

    Args:
        data (dict): Keyword inputs of the metric, e.g. ``{'ages': [...]}``.
        opt (dict): Configuration. It must contain:
            type (str): Metric type.
    """
    opt = deepcopy(opt)
    metric_type = opt.pop('type')
    metric = METRIC_REGISTRY.get(metric_type)(**data, **opt)
    return metric

import numpy as np
from scipy import stats

from tumorage.utils.errors import DomainError
from tumorage.utils.registry import METRIC_REGISTRY


@METRIC_REGISTRY.register()
def ks_distance(model, samples, **kwargs):
    """Kolmogorov-Smirnov distance between samples and a model CDF.

    The supremum of ``|F_n(x) - F(x)|`` is attained at a sample point, on
    either side of the step of the empirical CDF.

    Args:
        model (RdtMixture): Model providing ``cdf``.
        samples (array_like): Observed RDT values.

    Returns:
        float: Distance in [0, 1].
    """
    x = np.asarray(samples, dtype=np.float64).ravel()
    if x.size == 0:
        raise DomainError('ks_distance needs at least one sample.')
    if not np.all(np.isfinite(x)):
        raise DomainError('ks_distance needs finite samples.')
    return float(stats.kstest(x, model.cdf).statistic)


def empirical_cdf(samples, xs):
    """Fraction of samples less than or equal to each point of ``xs``."""
    x = np.sort(np.asarray(samples, dtype=np.float64).ravel())
    return np.searchsorted(x, np.asarray(xs, dtype=np.float64), side='right') / x.size

import csv

import numpy as np

from tumorage.metrics import empirical_cdf


def model_cdf_curve(model, samples=None, xs=None):
    """Model CDF, and the empirical CDF of ``samples`` when given, on a grid of RDT values.

    Args:
        model (RdtMixture): RDT distribution.
        samples (array_like | None): Observed RDT values.
        xs (array_like | None): Evaluation points. Default: 161 points on
            [-1, 3] doublings per year, widened to cover the samples.

    Returns:
        list[tuple]: ``(rdt, model_cdf, empirical_cdf)``; the last entry is
            None without samples.
    """
    if xs is None:
        low, high = -1.0, 3.0
        if samples is not None and len(samples):
            low = min(low, float(np.min(samples)))
            high = max(high, float(np.max(samples)))
        xs = np.linspace(low, high, 161)
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    model_values = model.cdf(xs).tolist()
    if samples is not None and len(samples):
        data_values = empirical_cdf(samples, xs).tolist()
    else:
        data_values = [None] * xs.size
    return list(zip(xs.tolist(), model_values, data_values))


def write_cdf_curve_csv(path, curve):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['rdt', 'model_cdf', 'empirical_cdf'])
        for x, model_value, data_value in curve:
            writer.writerow([f'{x:.6f}', f'{model_value:.8f}', '' if data_value is None else f'{data_value:.8f}'])

import csv
from collections import OrderedDict

import numpy as np

from tumorage.inversion import level_columns
from tumorage.metrics import DEFAULT_LEVELS, percentiles
from tumorage.utils.errors import DomainError
from tumorage.utils.geometry import volume_to_diameter


def size_given_age(ensemble, ages, v_max, levels=DEFAULT_LEVELS):
    """Distribution of diameter at fixed ages, the forward direction of the inversion.

    A history's size at age ``t`` is read off its log-linear trajectory. A
    history that already exceeded ``v_max`` before ``t`` counts with the
    diameter of ``v_max``; a truncated history that ended before ``t`` is
    left out.

    Args:
        ensemble (list[GrowthHistory]): Simulated histories.
        ages (sequence[float]): Ages in years, non-negative.
        v_max (float): Exit volume of the simulation, mL.
        levels (sequence[float]): Percentile levels.

    Returns:
        list[OrderedDict]: Per age, the diameter percentiles (None when no
            history contributes) and the counts ``n_alive`` and ``n_exited``.
    """
    ages = np.asarray(ages, dtype=np.float64)
    if ages.size == 0 or np.any(~np.isfinite(ages)) or np.any(ages < 0):
        raise DomainError('size_given_age needs non-negative finite ages.')
    if len(ensemble) == 0:
        raise DomainError('size_given_age needs a nonempty ensemble.')

    cap = np.log2(v_max)
    samples = [[] for _ in ages]
    n_alive = np.zeros(ages.size, dtype=int)
    n_exited = np.zeros(ages.size, dtype=int)
    for history in ensemble:
        inside = ages <= history.times[-1]
        log2_v = np.interp(ages, history.times, history.log2_volumes)
        for j in np.flatnonzero(inside):
            samples[j].append(log2_v[j])
        n_alive += inside
        if not history.truncated:
            for j in np.flatnonzero(~inside):
                samples[j].append(cap)
            n_exited += ~inside

    rows = []
    for j, age in enumerate(ages.tolist()):
        row = OrderedDict(age_years=age)
        values = None
        if samples[j]:
            values = percentiles(volume_to_diameter(np.exp2(np.asarray(samples[j]))), levels)
        for name, value in zip(level_columns(levels), values or [None] * len(levels)):
            row[name] = value
        row['n_alive'] = int(n_alive[j])
        row['n_exited'] = int(n_exited[j])
        rows.append(row)
    return rows


def write_size_given_age_csv(path, rows):
    """Write rows of :func:`size_given_age` as CSV."""
    columns = list(rows[0].keys())
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            cells = [f"{row['age_years']:g}"]
            cells += ['' if row[name] is None else f'{row[name]:.6f}' for name in columns[1:-2]]
            writer.writerow([*cells, row['n_alive'], row['n_exited']])

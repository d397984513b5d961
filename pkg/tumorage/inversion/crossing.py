import numpy as np

from tumorage.utils.geometry import diameter_to_volume, volume_to_diameter

UP = 'up'
DOWN = 'down'

# 'all' and 'first_up' interpolate exact crossing instants; 'occupancy' counts
# interval ends per log-diameter bucket
CROSSING_MODES = ('all', 'first_up', 'occupancy')
BUCKET_FACTOR = 10


def _crossing_mask(history, log2_targets):
    """Boolean (n_intervals, n_targets) mask of intervals crossing each target.

    An interval crosses a target when the target lies strictly between its
    end volumes, or equals its end volume; a target equal to the start volume
    belongs to the previous interval, so every boundary hit counts once.
    """
    a = history.log2_volumes[:-1, None]
    b = history.log2_volumes[1:, None]
    t = np.asarray(log2_targets, dtype=np.float64)[None, :]
    up = (a < t) & (t <= b)
    down = (b <= t) & (t < a)
    return up, down


def crossing_ages(history, log2_targets, first_up_only=False):
    """Crossing ages of one history for several thresholds at once.

    Within an interval the log volume is linear in time, so the crossing age
    is ``t_i + (log2 V* - log2 v_i) / rdt_i``.

    Args:
        history (GrowthHistory): The trajectory.
        log2_targets (array_like): log2 of the threshold volumes.
        first_up_only (bool): Keep only the first upward crossing per target.

    Returns:
        list[tuple[ndarray, ndarray]]: Per target, the crossing ages in time
            order and a boolean array that is True for upward crossings.
    """
    log2_targets = np.asarray(log2_targets, dtype=np.float64)
    if len(history) == 0:
        return [(np.empty(0), np.empty(0, dtype=bool)) for _ in log2_targets]
    up, down = _crossing_mask(history, log2_targets)
    out = []
    for j, target in enumerate(log2_targets):
        if first_up_only:
            idx = np.flatnonzero(up[:, j])[:1]
        else:
            idx = np.flatnonzero(up[:, j] | down[:, j])
        ages = history.times[idx] + (target - history.log2_volumes[idx]) / history.rdts[idx]
        out.append((ages, up[idx, j]))
    return out


def crossing_times(history, threshold):
    """Instants at which a history passes a threshold diameter.

    Args:
        history (GrowthHistory): The trajectory.
        threshold (float): Threshold diameter in cm.

    Returns:
        list[tuple[float, str]]: ``(age, direction)`` pairs in time order,
            with direction ``'up'`` or ``'down'``.
    """
    target = np.log2(diameter_to_volume(threshold))
    ages, is_up = crossing_ages(history, [target])[0]
    return [(age, UP if rising else DOWN) for age, rising in zip(ages.tolist(), is_up.tolist())]


def diameter_buckets(diameters, factor=BUCKET_FACTOR):
    """Log-diameter bucket indices, ``round(factor * ln d)``.

    Bucket ``b`` holds the diameters in ``[exp((b - 0.5) / factor), exp((b + 0.5) / factor))``.
    """
    return np.rint(factor * np.log(np.asarray(diameters, dtype=np.float64))).astype(np.int64)


def occupancy_ages(history, buckets, factor=BUCKET_FACTOR):
    """Ages at which a history is observed in each log-diameter bucket.

    Every interval ``[t_i, t_{i+1}]`` is filed under the bucket of its
    starting diameter and contributes its closing age ``t_{i+1}``, so slow
    histories, which stay longer in a bucket, weigh more.

    Args:
        history (GrowthHistory): The trajectory.
        buckets (array_like): Bucket indices, see :func:`diameter_buckets`.
        factor (float): Buckets per unit of ``ln d``. Default: 10.

    Returns:
        list[ndarray]: Per bucket, the observation ages in time order.
    """
    if len(history) == 0:
        return [np.empty(0) for _ in buckets]
    occupied = diameter_buckets(volume_to_diameter(history.volumes[:-1]), factor)
    closing = history.times[1:]
    return [closing[occupied == b] for b in np.asarray(buckets, dtype=np.int64)]

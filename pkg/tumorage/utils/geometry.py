import numpy as np

from tumorage.utils.errors import DomainError

SPHERE_FACTOR = np.pi / 6.0


def _check_positive(value, name):
    arr = np.asarray(value, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f'{name} must be positive and finite, got {value!r}.')
    return arr


def _as_output(arr, like):
    if np.ndim(like) == 0:
        return float(arr)
    return arr


def diameter_to_volume(d):
    """Convert a spherical tumor diameter to its volume.

    Volumes are in mL, which equals cm^3 for the diameters in cm used here.

    Args:
        d (float | ndarray): Diameter(s) in cm.

    Returns:
        float | ndarray: Volume(s) in mL, ``pi / 6 * d**3``.
    """
    arr = _check_positive(d, 'diameter')
    return _as_output(SPHERE_FACTOR * arr**3, d)


def volume_to_diameter(v):
    """Convert a spherical tumor volume to its diameter.

    Exact inverse of :func:`diameter_to_volume`.

    Args:
        v (float | ndarray): Volume(s) in mL.

    Returns:
        float | ndarray: Diameter(s) in cm, ``(6 v / pi) ** (1/3)``.
    """
    arr = _check_positive(v, 'volume')
    return _as_output(np.cbrt(arr / SPHERE_FACTOR), v)

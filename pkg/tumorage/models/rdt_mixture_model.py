from dataclasses import asdict, dataclass

import numpy as np

from tumorage.utils.errors import DomainError, InsufficientDataError
from tumorage.utils.registry import MODEL_REGISTRY

# smallest uniform fed to the quantile function; rng.random() can return 0.0
_U_FLOOR = 2.0**-60


@MODEL_REGISTRY.register()
@dataclass(frozen=True)
class RdtMixture():
    """Two-sided exponential mixture of reciprocal doubling times (RDT).

    With probability ``p_negative`` an RDT is negative, ``-Exp(lambda_neg)``;
    otherwise it is positive, ``Exp(lambda_pos)``. Both lambdas are rates, so
    the branch means are ``1 / lambda``. RDT is in doublings per year.

    Args:
        p_negative (float): Probability of a negative RDT, in [0, 1].
        lambda_pos (float): Rate of the positive branch.
        lambda_neg (float): Rate of the negative branch.
    """

    p_negative: float
    lambda_pos: float
    lambda_neg: float

    def __post_init__(self):
        for name in ('p_negative', 'lambda_pos', 'lambda_neg'):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not 0 <= self.p_negative <= 1:
            raise DomainError(f'p_negative must lie in [0, 1], got {self.p_negative}.')
        if not (np.isfinite(self.lambda_pos) and self.lambda_pos > 0):
            raise DomainError(f'lambda_pos must be positive, got {self.lambda_pos}.')
        if not (np.isfinite(self.lambda_neg) and self.lambda_neg > 0):
            raise DomainError(f'lambda_neg must be positive, got {self.lambda_neg}.')

    @property
    def mean(self):
        p = self.p_negative
        return (1 - p) / self.lambda_pos - p / self.lambda_neg

    def to_dict(self):
        return asdict(self)

    def cdf(self, x):
        """Cumulative distribution function.

        Args:
            x (float | ndarray): RDT value(s). Infinite values give the limits
                0 and 1.

        Returns:
            float | ndarray: P(RDT <= x).
        """
        arr = np.asarray(x, dtype=np.float64)
        if np.any(np.isnan(arr)):
            raise DomainError('cdf is undefined for NaN input.')
        p = self.p_negative
        neg = arr <= 0
        with np.errstate(over='ignore'):
            below = p * np.exp(self.lambda_neg * np.where(neg, arr, 0.0))
            above = p + (1 - p) * -np.expm1(-self.lambda_pos * np.where(neg, 0.0, arr))
        out = np.where(neg, below, above)
        return float(out) if out.ndim == 0 else out

    def quantile(self, u):
        """Inverse of :meth:`cdf`.

        Args:
            u (float | ndarray): Probabilities in the open interval (0, 1).

        Returns:
            float | ndarray: RDT value(s) ``x`` with ``cdf(x) == u``.
        """
        arr = np.asarray(u, dtype=np.float64)
        if np.any(~(arr > 0)) or np.any(~(arr < 1)):
            raise DomainError(f'quantile needs u in (0, 1), got {u!r}.')
        out = self._ppf(arr)
        return float(out) if out.ndim == 0 else out

    def _ppf(self, u):
        p = self.p_negative
        neg = u <= p
        # masked branches are evaluated on a safe dummy value
        u_neg = np.where(neg, u, p if p > 0 else 1.0)
        u_pos = np.where(neg, (1 + p) / 2, u)
        with np.errstate(divide='ignore', invalid='ignore'):
            below = np.log(u_neg / p) / self.lambda_neg if p > 0 else np.zeros_like(u)
            above = -np.log1p(-(u_pos - p) / (1 - p)) / self.lambda_pos if p < 1 else np.zeros_like(u)
        return np.where(neg, below, above)

    def sample(self, rng, size=None):
        """Draw RDT values by inverse transform sampling.

        Args:
            rng (numpy.random.Generator): Random source.
            size (int | tuple | None): Output shape. None draws one float.

        Returns:
            float | ndarray: RDT sample(s).
        """
        u = np.maximum(rng.random(size), _U_FLOOR)
        out = self._ppf(np.asarray(u))
        return float(out) if size is None else out

    def __str__(self):
        return (f'RdtMixture(p_negative={self.p_negative:g}, lambda_pos={self.lambda_pos:g}, '
                f'lambda_neg={self.lambda_neg:g})')


def default_model():
    """The published fit: 35% negative RDTs, rates 0.79 (positive) and 5.0 (negative)."""
    return RdtMixture(p_negative=0.35, lambda_pos=0.79, lambda_neg=5.0)


def fit_mixture(samples, min_per_side=2):
    """Fit an :class:`RdtMixture` by per-branch maximum likelihood.

    ``p_negative`` is the fraction of negative samples and each rate is the
    reciprocal of the mean magnitude on its side. Zero counts as positive.

    Args:
        samples (array_like): Observed RDT values, doublings per year.
        min_per_side (int): Minimum number of samples needed on each side of
            zero. Default: 2.

    Returns:
        RdtMixture: The fitted model.
    """
    x = np.asarray(samples, dtype=np.float64).ravel()
    if not np.all(np.isfinite(x)):
        raise DomainError('RDT samples must be finite.')
    neg = x[x < 0]
    pos = x[x >= 0]
    if len(neg) < min_per_side or len(pos) < min_per_side:
        raise InsufficientDataError(f'Need at least {min_per_side} samples on each side of zero, '
                                    f'got {len(neg)} negative and {len(pos)} non-negative.')
    mean_pos = pos.mean()
    if mean_pos <= 0:
        raise InsufficientDataError('All non-negative samples are zero; the positive rate is undefined.')
    return RdtMixture(p_negative=len(neg) / len(x), lambda_pos=1.0 / mean_pos, lambda_neg=1.0 / -neg.mean())

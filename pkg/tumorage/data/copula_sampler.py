from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter
from scipy.special import ndtr

from tumorage.utils.errors import ConfigError, DomainError
from tumorage.utils.registry import SAMPLER_REGISTRY

# keeps ndtr output inside the open unit interval
_U_MIN = 2.0**-60
_U_MAX = 1.0 - 2.0**-53


@dataclass(frozen=True)
class CorrelationConfig():
    """Lag-1 correlation ``rho`` of the latent Gaussian series, in [0, 1)."""

    rho: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'rho', float(self.rho))
        if not 0 <= self.rho < 1:
            raise ConfigError(f'rho must lie in [0, 1), got {self.rho}.')


@SAMPLER_REGISTRY.register()
class CopulaRdtSampler():
    """Serially correlated RDT values through a Gaussian copula.

    A stationary AR(1) series ``x[i+1] = rho * x[i] + sqrt(1 - rho^2) * e[i]``
    with ``x[0] ~ N(0, 1)`` is mapped through the standard normal CDF and the
    model quantile function, so every value has exactly the model's marginal
    distribution. Successive calls to :meth:`draw` continue the same series.

    Args:
        model (RdtMixture): Marginal RDT distribution.
        rng (numpy.random.Generator): Random source.
        rho (float): Lag-1 correlation in Gaussian space.
    """

    def __init__(self, model, rng, rho=0.0):
        self.model = model
        self.rng = rng
        self.config = CorrelationConfig(rho)
        rho = self.config.rho
        self._b = [np.sqrt(1.0 - rho * rho)]
        self._a = [1.0, -rho]
        self._last = None

    def draw_gaussian(self, n):
        """Return the next ``n`` values of the latent Gaussian series."""
        rho = self.config.rho
        eps = self.rng.standard_normal(n)
        if self._last is None:
            # start at stationarity
            x = np.empty(n)
            x[0] = eps[0]
            if n > 1:
                x[1:] = lfilter(self._b, self._a, eps[1:], zi=[rho * x[0]])[0]
        else:
            x = lfilter(self._b, self._a, eps, zi=[rho * self._last])[0]
        self._last = x[-1]
        return x

    def draw(self, n):
        """Return the next ``n`` RDT values."""
        u = np.clip(ndtr(self.draw_gaussian(n)), _U_MIN, _U_MAX)
        return self.model.quantile(u)


def correlated_rdt_sequence(model, config, rng, length):
    """Generate ``length`` serially correlated RDT values.

    Args:
        model (RdtMixture): Marginal RDT distribution.
        config (CorrelationConfig): Correlation settings.
        rng (numpy.random.Generator): Random source.
        length (int): Sequence length, at least 1.

    Returns:
        ndarray: RDT values, doublings per year.
    """
    if int(length) < 1:
        raise DomainError(f'length must be >= 1, got {length}.')
    return CopulaRdtSampler(model, rng, rho=config.rho).draw(int(length))

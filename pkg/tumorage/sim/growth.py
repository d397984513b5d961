import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from tqdm import tqdm

from tumorage.data import build_sampler
from tumorage.utils import get_root_logger
from tumorage.utils.errors import ConfigError, GrowthOverflowError
from tumorage.utils.geometry import volume_to_diameter

DAYS_PER_YEAR = 365.0


@dataclass(frozen=True)
class SimulationConfig():
    """Settings of a growth simulation.

    Volumes are in mL, the interval in years. ``rho`` of 0 draws independent
    RDTs; a positive ``rho`` draws them through the Gaussian copula.
    """

    v0: float = 0.01
    v_max: float = 4200.0
    interval_h: float = 245.0 / DAYS_PER_YEAR
    n_histories: int = 10000
    seed: int = 0
    rho: float = 0.0
    max_steps: int = 10000
    block_size: int = 64

    def __post_init__(self):
        if not (math.isfinite(self.v0) and math.isfinite(self.v_max)) or not 0 < self.v0 < self.v_max:
            raise ConfigError(f'Need 0 < v0 < v_max, got v0={self.v0}, v_max={self.v_max}.')
        if not math.isfinite(self.interval_h) or self.interval_h <= 0:
            raise ConfigError(f'interval_h must be positive, got {self.interval_h}.')
        if self.n_histories < 1:
            raise ConfigError(f'n_histories must be >= 1, got {self.n_histories}.')
        if self.max_steps < 1 or self.block_size < 1:
            raise ConfigError('max_steps and block_size must be >= 1.')
        if not 0 <= self.rho < 1:
            raise ConfigError(f'rho must lie in [0, 1), got {self.rho}.')
        if self.seed < 0:
            raise ConfigError(f'seed must be non-negative, got {self.seed}.')

    @classmethod
    def from_options(cls, opt, **overrides):
        sim = opt['simulation']
        kwargs = dict(
            v0=float(sim['v0']),
            v_max=float(sim['v_max']),
            interval_h=float(sim['h_days']) / DAYS_PER_YEAR,
            n_histories=int(sim['n_histories']),
            seed=int(opt['manual_seed']),
            rho=float(opt['sampler']['rho']),
            max_steps=int(sim['max_steps']),
            block_size=int(sim['block_size']))
        kwargs.update(overrides)
        return cls(**kwargs)

    def to_dict(self):
        return asdict(self)


@dataclass
class GrowthHistory():
    """One simulated tumor trajectory.

    ``times[i]`` and ``volumes[i]`` give the state at the start of interval
    ``i``, and ``rdts[i]`` the growth rate applied over
    ``[times[i], times[i + 1]]``. There is one more time/volume than RDT.
    """

    history_id: int
    times: np.ndarray
    volumes: np.ndarray
    rdts: np.ndarray
    truncated: bool = False
    log2_volumes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.log2_volumes = np.log2(self.volumes)

    def __len__(self):
        return len(self.rdts)

    @property
    def steps(self):
        """List of ``(t_i, v_i, rdt_i)`` per interval."""
        return list(zip(self.times[:-1].tolist(), self.volumes[:-1].tolist(), self.rdts.tolist()))

    @property
    def diameters(self):
        return volume_to_diameter(self.volumes)

    @property
    def final_volume(self):
        return float(self.volumes[-1])


def grow_step(v, rdt, h):
    """Volume after growing for ``h`` years at ``rdt`` doublings per year."""
    with np.errstate(over='ignore', under='ignore'):
        out = np.exp2(h * rdt) * v
    if not np.all(np.isfinite(out)) or np.any(out <= 0):
        raise GrowthOverflowError(f'Growth step from v={v!r} with rdt={rdt!r}, h={h!r} left the finite '
                                  'positive range; check the interval and the RDT model.')
    return float(out) if np.ndim(out) == 0 else out


def history_rng(seed, index):
    """Random source of history ``index``.

    Equal to child ``index`` of ``SeedSequence(seed).spawn(...)``, so every
    history gets an independent stream that does not depend on which worker
    runs it.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index, )))


def simulate_history(model, config, rng, sampler=None, history_id=0):
    """Simulate one tumor from ``v0`` until its volume exceeds ``v_max``.

    RDT values are drawn in blocks of ``config.block_size``. A history that is
    still at or below ``v_max`` after ``config.max_steps`` intervals is
    returned with ``truncated=True``.

    Args:
        model (RdtMixture): RDT distribution.
        config (SimulationConfig): Simulation settings.
        rng (numpy.random.Generator): Random source of this history.
        sampler (object | None): Object with ``draw(n)``. Default: built from
            ``config.rho``.
        history_id (int): Identifier stored in the result. Default: 0.

    Returns:
        GrowthHistory: The trajectory.
    """
    if sampler is None:
        sampler = build_sampler(model, {'rho': config.rho}, rng)

    h = config.interval_h
    volumes = [np.array([config.v0])]
    rdts = []
    n_steps = 0
    current = config.v0
    truncated = True
    while n_steps < config.max_steps:
        n = min(config.block_size, config.max_steps - n_steps)
        block = np.asarray(sampler.draw(n), dtype=np.float64)
        with np.errstate(over='ignore', under='ignore'):
            # sequential products, identical to chained grow_step calls
            block_volumes = np.cumprod(np.concatenate(([current], np.exp2(h * block))))[1:]
        exceeded = np.flatnonzero(block_volumes > config.v_max)
        if exceeded.size:
            stop = exceeded[0] + 1
            block, block_volumes = block[:stop], block_volumes[:stop]
            truncated = False
        if not np.all(np.isfinite(block_volumes)) or np.any(block_volumes <= 0):
            raise GrowthOverflowError(f'History {history_id} left the finite positive volume range.')
        rdts.append(block)
        volumes.append(block_volumes)
        n_steps += len(block)
        current = block_volumes[-1]
        if not truncated:
            break

    volumes = np.concatenate(volumes)
    rdts = np.concatenate(rdts)
    times = np.arange(len(volumes)) * h
    return GrowthHistory(history_id=history_id, times=times, volumes=volumes, rdts=rdts, truncated=truncated)


def _simulate_range(model, config, indices, pbar=None):
    out = []
    for k in indices:
        out.append(simulate_history(model, config, history_rng(config.seed, k), history_id=k))
        if pbar is not None:
            pbar.update(1)
    return out


def simulate_ensemble(model, config, num_threads=1, progress=False):
    """Simulate ``config.n_histories`` independent histories.

    History ``k`` uses :func:`history_rng` of ``(config.seed, k)``, so the
    ensemble is the same for any ``num_threads``.

    Args:
        model (RdtMixture): RDT distribution.
        config (SimulationConfig): Simulation settings.
        num_threads (int): Worker threads. Default: 1.
        progress (bool): Show a progress bar. Default: False.

    Returns:
        list[GrowthHistory]: Histories in index order.
    """
    logger = get_root_logger()
    n = config.n_histories
    pbar = tqdm(total=n, unit='history', disable=not progress)
    if num_threads <= 1:
        ensemble = _simulate_range(model, config, range(n), pbar)
    else:
        chunk = math.ceil(n / num_threads)
        chunks = [range(start, min(start + chunk, n)) for start in range(0, n, chunk)]
        with ThreadPoolExecutor(max_workers=num_threads) as executor:
            parts = executor.map(lambda idx: _simulate_range(model, config, idx, pbar), chunks)
            ensemble = [history for part in parts for history in part]
    pbar.close()

    n_truncated = count_truncated(ensemble)
    if n_truncated:
        logger.warning(f'{n_truncated} of {n} histories reached max_steps={config.max_steps} '
                       'without exceeding v_max.')
    logger.info(f'Simulated {n} histories (seed={config.seed}, rho={config.rho:g}).')
    return ensemble


def count_truncated(ensemble):
    return sum(1 for history in ensemble if history.truncated)


def write_ensemble_csv(path, ensemble, limit=None):
    """Write trajectories as CSV rows ``history_id, t_years, volume_ml, diameter_cm``.

    Args:
        path (str): Output file.
        ensemble (list[GrowthHistory]): Histories to write.
        limit (int | None): Write only the first ``limit`` histories.
    """
    histories = ensemble if limit is None else ensemble[:limit]
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['history_id', 't_years', 'volume_ml', 'diameter_cm'])
        for history in histories:
            for t, v, d in zip(history.times.tolist(), history.volumes.tolist(), history.diameters.tolist()):
                writer.writerow([history.history_id, repr(t), repr(v), repr(d)])

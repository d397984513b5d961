from tumorage.inversion import build_age_table
from tumorage.inversion.crossing import BUCKET_FACTOR
from tumorage.sim import count_truncated, simulate_ensemble
from tumorage.utils import AvgTimer, get_root_logger


def age_table_pipeline(model,
                       config,
                       grid,
                       crossings='all',
                       num_threads=1,
                       progress=False,
                       bucket_factor=BUCKET_FACTOR):
    """Simulate an ensemble and invert it into an age table.

    Args:
        model (RdtMixture): RDT distribution.
        config (SimulationConfig): Simulation settings.
        grid (DiameterGrid): Threshold diameters.
        crossings (str): Crossing convention, ``'all'``, ``'first_up'`` or
            ``'occupancy'``.
        num_threads (int): Worker threads for the simulation. Default: 1.
        progress (bool): Show a progress bar. Default: False.
        bucket_factor (float): Buckets per unit of ``ln d`` for ``'occupancy'``.

    Returns:
        AgeTable: The inverted table.
    """
    logger = get_root_logger()
    grid.check_within(config.v0, config.v_max)
    timer = AvgTimer()
    ensemble = simulate_ensemble(model, config, num_threads=num_threads, progress=progress)
    timer.record()
    table = build_age_table(ensemble, grid, crossings=crossings, v_max=config.v_max, bucket_factor=bucket_factor)
    timer.record()
    logger.info(f'Age table built from {len(ensemble)} histories '
                f'({count_truncated(ensemble)} truncated) in {timer.get_total_time():.1f}s.')
    return table
